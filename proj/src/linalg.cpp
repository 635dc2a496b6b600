#include "symtt/linalg.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "symtt/error.hpp"

namespace symtt {

namespace {

// JacobiSVD is the most accurate choice for the small matricizations that
// dominate; divide and conquer takes over when it would get slow.
constexpr Eigen::Index kJacobiLimit = 64;

bool is_real(const CMatrix& a) { return a.imag().cwiseAbs().maxCoeff() == 0.0; }

template <typename Svd>
void check_svd(const Svd& s) {
  if (s.info() != Eigen::Success) {
    throw Error(ErrorCode::kIterationFailure, "SVD did not converge");
  }
}

}  // namespace

Eigen::Index SvdResult::rank(double rel_tol) const {
  if (sigma.size() == 0 || sigma[0] <= 0.0) return 0;
  const double cut = rel_tol * sigma[0];
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma[r] > cut) ++r;
  return r;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix kron_all(const std::vector<CMatrix>& factors) {
  CMatrix out = CMatrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

CVector fix_column_phases(CMatrix& a) {
  CVector phases = CVector::Ones(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double m = std::abs(a(i, j));
      if (m > best) {
        best = m;
        pivot = i;
      }
    }
    if (best <= 0.0) continue;
    const Complex ph = std::conj(a(pivot, j)) / best;
    a.col(j) *= ph;
    a(pivot, j) = Complex(std::abs(a(pivot, j)), 0.0);
    phases[j] = ph;
  }
  return phases;
}

SvdResult svd(const CMatrix& a) {
  if (!is_finite(a)) throw Error(ErrorCode::kIterationFailure, "non-finite input to svd");
  SvdResult r;
  if (std::min(a.rows(), a.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<CMatrix> s(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    check_svd(s);
    r.u = s.matrixU();
    r.sigma = s.singularValues();
    r.vh = s.matrixV().adjoint();
  } else {
    Eigen::BDCSVD<CMatrix> s(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    check_svd(s);
    r.u = s.matrixU();
    r.sigma = s.singularValues();
    r.vh = s.matrixV().adjoint();
  }
  const CVector ph = fix_column_phases(r.u);
  // u_j -> u_j * ph_j requires vh row j -> conj(ph_j) * vh row j.
  for (Eigen::Index j = 0; j < r.vh.rows(); ++j) r.vh.row(j) *= std::conj(ph[j]);
  return r;
}

FullSvdResult full_svd(const CMatrix& a) {
  if (!is_finite(a)) throw Error(ErrorCode::kIterationFailure, "non-finite input to svd");
  Eigen::JacobiSVD<CMatrix> s(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  check_svd(s);
  FullSvdResult r{s.matrixU(), s.singularValues(), s.matrixV().adjoint()};
  const CVector ph = fix_column_phases(r.u);
  for (Eigen::Index j = 0; j < std::min(r.u.cols(), r.vh.rows()); ++j) {
    r.vh.row(j) *= std::conj(ph[j]);
  }
  return r;
}

EighResult eigh(const CMatrix& a) {
  if (!is_square(a)) throw Error(ErrorCode::kNotSquare, "eigh needs a square matrix");
  if (!is_finite(a)) throw Error(ErrorCode::kIterationFailure, "non-finite input to eigh");
  const double norm = a.norm();
  if (hermitian_defect(a) > tol::kLinear * norm) {
    throw Error(ErrorCode::kNotHermitian, "eigh input is not Hermitian");
  }
  EighResult r;
  if (is_real(a)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.real());
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::kIterationFailure, "eigh did not converge");
    }
    r.values = es.eigenvalues();
    r.vectors = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::kIterationFailure, "eigh did not converge");
    }
    r.values = es.eigenvalues();
    r.vectors = es.eigenvectors();
  }
  fix_column_phases(r.vectors);
  return r;
}

SchurResult schur(const CMatrix& a) {
  if (!is_square(a)) throw Error(ErrorCode::kNotSquare, "schur needs a square matrix");
  if (!is_finite(a)) throw Error(ErrorCode::kIterationFailure, "non-finite input to schur");
  Eigen::ComplexSchur<CMatrix> cs(a);
  if (cs.info() != Eigen::Success) {
    throw Error(ErrorCode::kIterationFailure, "Schur iteration did not converge");
  }
  // Eigen returns a = U T U^H; we expose q = U^H.
  CMatrix t = cs.matrixT().triangularView<Eigen::Upper>();
  return {cs.matrixU().adjoint(), t};
}

CMatrix fourier_matrix(Eigen::Index n) {
  if (n < 1) throw Error(ErrorCode::kBadParams, "fourier_matrix needs n >= 1");
  CMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // Reduce j*k mod n first so the angle stays exact for large indices.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                           static_cast<double>(n);
      f(j, k) = scale * std::polar(1.0, angle);
    }
  }
  return f;
}

CMatrix exchange_matrix(Eigen::Index n) {
  if (n < 1) throw Error(ErrorCode::kBadParams, "exchange_matrix needs n >= 1");
  CMatrix j = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;
  return j;
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix diag(const RVector& d) { return d.cast<Complex>().asDiagonal(); }
CMatrix diag(const CVector& d) { return d.asDiagonal(); }

CMatrix flip_both(const CMatrix& a) { return a.reverse(); }

bool is_square(const CMatrix& a) { return a.rows() == a.cols(); }

bool is_finite(const CMatrix& a) { return a.allFinite(); }

double hermitian_defect(const CMatrix& a) { return (a - a.adjoint()).norm(); }

double unitarity_defect(const CMatrix& q) {
  return (q.adjoint() * q - CMatrix::Identity(q.cols(), q.cols())).norm();
}

double max_abs_imag(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.imag().cwiseAbs().maxCoeff();
}

}  // namespace symtt
