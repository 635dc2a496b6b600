#pragma once

// Dense complex kernels shared by every other module. Eigen provides the
// factorizations; this layer pins down shapes, orderings and phase
// conventions so that downstream normal forms are reproducible.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace symtt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace tol {
// Kernel residuals, relative to the input's Frobenius norm.
inline constexpr double kLinear = 1e-12;
// Numerical rank cutoff, relative to the largest singular value.
inline constexpr double kRank = 1e-12;
// Structure classification, relative to the input's Frobenius norm.
inline constexpr double kStruct = 1e-10;
// Symmetry detection and MPS relation checks.
inline constexpr double kSymmetry = 1e-10;
// Cross-block eigenvalue gap below which eigenvectors are not classified.
inline constexpr double kGap = 1e-8;
}  // namespace tol

struct SvdResult {
  CMatrix u;     // m x k, orthonormal columns
  RVector sigma; // k = min(m, n), descending
  CMatrix vh;    // k x n, orthonormal rows

  // Number of singular values strictly above rel_tol * sigma[0].
  Eigen::Index rank(double rel_tol = tol::kRank) const;
};

struct FullSvdResult {
  CMatrix u;     // m x m unitary
  RVector sigma; // min(m, n), descending
  CMatrix vh;    // n x n unitary
};

struct EighResult {
  RVector values;  // ascending
  CMatrix vectors; // orthonormal columns
};

struct SchurResult {
  CMatrix q; // unitary, a = q^H t q
  CMatrix t; // upper triangular
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron_all(const std::vector<CMatrix>& factors);

// Thin SVD. The largest-magnitude entry of each left singular vector is made
// real and non-negative; the matching row of vh absorbs the phase.
SvdResult svd(const CMatrix& a);
FullSvdResult full_svd(const CMatrix& a);

// Hermitian eigendecomposition. Throws NotHermitian when
// ||a - a^H||_F > tol::kLinear * ||a||_F. Eigenvectors follow the same
// phase convention as svd().
EighResult eigh(const CMatrix& a);

// a = q^H t q with t upper triangular.
SchurResult schur(const CMatrix& a);

// f[j,k] = exp(2 pi i j k / n) / sqrt(n)
CMatrix fourier_matrix(Eigen::Index n);
// Anti-identity J with J[i, n-1-i] = 1.
CMatrix exchange_matrix(Eigen::Index n);

CMatrix identity(Eigen::Index n);
CMatrix diag(const RVector& d);
CMatrix diag(const CVector& d);

// J a J without forming J.
CMatrix flip_both(const CMatrix& a);

bool is_square(const CMatrix& a);
bool is_finite(const CMatrix& a);
// ||a - a^H||_F
double hermitian_defect(const CMatrix& a);
// ||q^H q - I||_F
double unitarity_defect(const CMatrix& q);
double max_abs_imag(const CMatrix& a);

// Rotates each column so its largest-magnitude entry is real non-negative;
// returns the conjugated phases that were applied (column j multiplied by
// phases[j]).
CVector fix_column_phases(CMatrix& a);

}  // namespace symtt
