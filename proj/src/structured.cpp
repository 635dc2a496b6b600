#include "symtt/structured.hpp"

#include <cmath>
#include <numbers>

#include "symtt/error.hpp"

namespace symtt {

namespace {

CMatrix toeplitz_from_edges(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  CMatrix t(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = j >= i ? a(0, j - i) : a(i - j, 0);
  }
  return t;
}

double omega_circulant_defect(const CMatrix& a, Complex omega) {
  return (a - omega_circulant(a.row(0).transpose(), omega)).norm();
}

// Principal argument with -0.0 imaginary parts treated as +0.0, so that
// omega = -1 always maps to +pi.
double principal_arg(Complex w) {
  return std::arg(Complex(w.real(), w.imag() == 0.0 ? 0.0 : w.imag()));
}

bool is_sym_persym(const CMatrix& a, double tol) {
  const double bound = tol * a.norm();
  return (a - a.transpose()).norm() <= bound && (flip_both(a) - a).norm() <= bound;
}

}  // namespace

CMatrix circulant(const CVector& r) { return omega_circulant(r, Complex(1.0, 0.0)); }

CMatrix omega_circulant(const CVector& r, Complex omega) {
  const Eigen::Index n = r.size();
  CMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = j >= i ? r[j - i] : omega * r[n + j - i];
  }
  return c;
}

bool is_omega_circulant(const CMatrix& a, Complex omega, double tol) {
  if (!is_square(a) || a.rows() == 0) return false;
  return omega_circulant_defect(a, omega) <= tol * a.norm();
}

StructureFlags classify(const CMatrix& a, double tol) {
  StructureFlags f;
  if (!is_square(a) || a.rows() == 0 || !is_finite(a)) return f;
  const Eigen::Index n = a.rows();
  const double bound = tol * a.norm();
  const CMatrix at = a.transpose();
  const CMatrix jaj = flip_both(a);

  f.real = max_abs_imag(a) <= bound;
  f.symmetric = (a - at).norm() <= bound;
  f.skew_symmetric = (a + at).norm() <= bound;
  f.hermitian = hermitian_defect(a) <= bound;
  f.persymmetric = (jaj - at).norm() <= bound;
  f.skew_persymmetric = (jaj + at).norm() <= bound;
  f.centrosymmetric = (jaj - a).norm() <= bound;
  f.toeplitz = (a - toeplitz_from_edges(a)).norm() <= bound;
  f.circulant = omega_circulant_defect(a, 1.0) <= bound;
  f.skew_circulant = omega_circulant_defect(a, -1.0) <= bound;

  CMatrix off = a;
  off.diagonal().setZero();
  f.diagonal = off.norm() <= bound;

  if (n >= 2 && f.toeplitz) {
    // Estimate omega from the wrap entry paired with the largest r_k.
    Eigen::Index k_best = 1;
    for (Eigen::Index k = 2; k < n; ++k) {
      if (std::abs(a(0, k)) > std::abs(a(0, k_best))) k_best = k;
    }
    const Complex rk = a(0, k_best);
    if (std::abs(rk) > bound) {
      const Complex w = a(n - k_best, 0) / rk;
      if (std::abs(std::abs(w) - 1.0) <= tol) {
        const Complex unit = w / std::abs(w);
        if (omega_circulant_defect(a, unit) <= bound) f.omega = unit;
      }
    }
  }
  return f;
}

std::pair<CMatrix, CMatrix> persym_split(const CMatrix& a, double tol) {
  if (!is_square(a)) throw Error(ErrorCode::kNotSquare, "persym_split needs a square matrix");
  if ((a - a.transpose()).norm() > tol * a.norm()) {
    throw Error(ErrorCode::kNotSymmetric, "persym_split needs a symmetric matrix");
  }
  const CMatrix jaj = flip_both(a);
  return {0.5 * (a + jaj), 0.5 * (a - jaj)};
}

std::pair<CMatrix, CMatrix> corner_blocks(const CMatrix& a, double tol) {
  if (!is_square(a)) throw Error(ErrorCode::kNotSquare, "corner_blocks needs a square matrix");
  if (a.rows() % 2 != 0) throw Error(ErrorCode::kOddSize, "corner_blocks needs an even size");
  if (!is_sym_persym(a, tol)) {
    throw Error(ErrorCode::kNotSymPersym, "corner_blocks needs a symmetric persymmetric matrix");
  }
  const Eigen::Index m = a.rows() / 2;
  return {a.topLeftCorner(m, m), a.bottomLeftCorner(m, m)};
}

BlockPair block_diagonalize(const CMatrix& a, double tol) {
  if (!is_square(a)) throw Error(ErrorCode::kNotSquare, "block_diagonalize needs a square matrix");
  if (a.rows() % 2 != 0) throw Error(ErrorCode::kOddSize, "block_diagonalize needs an even size");
  if (!is_sym_persym(a, tol) || max_abs_imag(a) > tol * a.norm()) {
    throw Error(ErrorCode::kNotSymPersym,
                "block_diagonalize needs a real symmetric persymmetric matrix");
  }
  const Eigen::Index m = a.rows() / 2;
  const CMatrix b = a.topLeftCorner(m, m);
  const CMatrix jc = a.bottomLeftCorner(m, m).colwise().reverse();
  const CMatrix jm = exchange_matrix(m);
  const CMatrix im = identity(m);

  BlockPair out;
  out.b_plus = b + jc;
  out.b_minus = b - jc;
  out.q.resize(2 * m, 2 * m);
  out.q << im, jm, im, -jm;
  out.q /= std::sqrt(2.0);
  return out;
}

ClassifiedEigenbasis classified_eigenbasis(const CMatrix& a, double gap_tol, double tol) {
  const BlockPair blocks = block_diagonalize(a, tol);
  const EighResult plus = eigh(blocks.b_plus);
  const EighResult minus = eigh(blocks.b_minus);
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::Index m = blocks.b_plus.rows();

  ClassifiedEigenbasis out;
  for (Eigen::Index k = 0; k < m; ++k) {
    const CVector v = plus.vectors.col(k);
    CVector lifted(2 * m);
    lifted << v, v.reverse();
    out.sym_pairs.push_back({plus.values[k], s * lifted});
  }
  for (Eigen::Index k = 0; k < m; ++k) {
    const CVector u = minus.vectors.col(k);
    CVector lifted(2 * m);
    lifted << u, -u.reverse();
    out.skew_pairs.push_back({minus.values[k], s * lifted});
  }
  // Both value lists are ascending, so a merge finds the closest cross pair.
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  while (i < m && j < m) {
    if (std::abs(plus.values[i] - minus.values[j]) < gap_tol) {
      out.degenerate = true;
      break;
    }
    if (plus.values[i] < minus.values[j]) ++i; else ++j;
  }
  return out;
}

CVector circulant_eigenvalues(const CVector& r) {
  const Eigen::Index n = r.size();
  if (n == 0) throw Error(ErrorCode::kBadParams, "circulant_eigenvalues needs a nonempty row");
  return std::sqrt(static_cast<double>(n)) * (fourier_matrix(n) * r);
}

OmegaTransform omega_to_circulant(const CMatrix& c, Complex omega, double tol) {
  if (std::abs(std::abs(omega) - 1.0) > tol) {
    throw Error(ErrorCode::kNotOmegaCirculant, "omega must have unit modulus");
  }
  if (!is_omega_circulant(c, omega, tol)) {
    throw Error(ErrorCode::kNotOmegaCirculant, "matrix is not omega-circulant for this omega");
  }
  const Eigen::Index n = c.rows();
  const double phi = principal_arg(omega);
  CVector d(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d[j] = std::polar(1.0, phi * static_cast<double>(j) / static_cast<double>(n));
  }
  OmegaTransform out;
  out.d = d.asDiagonal();
  out.circ = d.conjugate().asDiagonal() * c * d.asDiagonal();
  return out;
}

}  // namespace symtt
