#pragma once

// Reference routines for tests. They share no code with the library kernels:
// complex problems are embedded as real symmetric / real rectangular ones and
// solved with plain cyclic Jacobi sweeps.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "symtt/linalg.hpp"

namespace oracle {

using symtt::CMatrix;
using symtt::CVector;
using symtt::RVector;

// [[Re, -Im], [Im, Re]]
inline Eigen::MatrixXd real_embed(const CMatrix& a) {
  const auto m = a.rows(), n = a.cols();
  Eigen::MatrixXd r(2 * m, 2 * n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      r(i, j) = a(i, j).real();
      r(i, j + n) = -a(i, j).imag();
      r(i + m, j) = a(i, j).imag();
      r(i + m, j + n) = a(i, j).real();
    }
  }
  return r;
}

// Eigenvalues of a real symmetric matrix, ascending.
inline std::vector<double> jacobi_sym_eigenvalues(Eigen::MatrixXd a) {
  const auto n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-32 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Eigenvalues of a Hermitian matrix, ascending. Each value appears twice in
// the real embedding.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& a) {
  const auto doubled = jacobi_sym_eigenvalues(real_embed(a));
  std::vector<double> ev;
  for (std::size_t i = 0; i < doubled.size(); i += 2) ev.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  return ev;
}

// Singular values of a real matrix by one-sided Hestenes Jacobi, descending.
inline std::vector<double> jacobi_singular_values(Eigen::MatrixXd a) {
  if (a.rows() < a.cols()) a.transposeInPlace();
  const auto n = a.cols();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const double gamma = a.col(p).dot(a.col(q));
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
        const Eigen::VectorXd cp = a.col(p);
        a.col(p) = c * cp - s * a.col(q);
        a.col(q) = s * cp + c * a.col(q);
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (Eigen::Index j = 0; j < n; ++j) sv[j] = a.col(j).norm();
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

inline std::vector<double> singular_values(const CMatrix& a) {
  const auto doubled = jacobi_singular_values(real_embed(a));
  std::vector<double> sv;
  for (std::size_t i = 0; i < doubled.size(); i += 2) sv.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  return sv;
}

inline int rank(const CMatrix& a, double rel_cut = 1e-12) {
  const auto sv = singular_values(a);
  if (sv.empty() || sv[0] == 0.0) return 0;
  return static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > rel_cut * sv[0]; }));
}

// Row-major matricization: rows indexed by bits i_1..i_j.
inline CMatrix matricize(const CVector& x, int j) {
  const Eigen::Index rows = Eigen::Index{1} << j;
  const Eigen::Index cols = x.size() / rows;
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = x[r * cols + c];
  return m;
}

// Dense Kronecker product built entrywise.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index r = 0; r < b.rows(); ++r)
        for (Eigen::Index c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
  return k;
}

inline CMatrix exchange(Eigen::Index n) {
  CMatrix j = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;
  return j;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

// Component of x at bits (i_1 most significant).
inline std::size_t index_of(const std::vector<int>& bits) {
  std::size_t idx = 0;
  for (int b : bits) idx = (idx << 1) | static_cast<std::size_t>(b);
  return idx;
}

}  // namespace oracle
