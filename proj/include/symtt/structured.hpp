#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "symtt/linalg.hpp"

namespace symtt {

struct StructureFlags {
  bool real = false;
  bool symmetric = false;
  bool skew_symmetric = false;
  bool hermitian = false;
  bool persymmetric = false;       // J A J = A^T
  bool skew_persymmetric = false;  // J A J = -A^T
  bool centrosymmetric = false;    // J A J = A
  bool toeplitz = false;
  bool circulant = false;
  bool skew_circulant = false;
  bool diagonal = false;
  // Wrap factor when the matrix is omega-circulant with nonzero wrap entries.
  std::optional<Complex> omega;
};

struct BlockPair {
  CMatrix b_plus;   // B + J C
  CMatrix b_minus;  // B - J C
  CMatrix q;        // q A q^T = diag(b_plus, b_minus)
};

struct EigenPair {
  double value;
  CVector vector;
};

struct ClassifiedEigenbasis {
  std::vector<EigenPair> sym_pairs;   // J v = v
  std::vector<EigenPair> skew_pairs;  // J v = -v
  bool degenerate = false;
};

// Flags are decided against tol * ||a||_F. Non-square input yields all-false.
StructureFlags classify(const CMatrix& a, double tol = tol::kStruct);

// True when a is omega-circulant for this omega within tol * ||a||_F.
bool is_omega_circulant(const CMatrix& a, Complex omega, double tol = tol::kStruct);

// a = p + s with p = (a + JaJ)/2 symmetric persymmetric and
// s = (a - JaJ)/2 symmetric skew-persymmetric.
std::pair<CMatrix, CMatrix> persym_split(const CMatrix& a, double tol = tol::kStruct);

// For symmetric persymmetric a of size 2m: b = top-left block, c = bottom-left.
std::pair<CMatrix, CMatrix> corner_blocks(const CMatrix& a, double tol = tol::kStruct);

// q = (1/sqrt 2) [[I, J], [I, -J]] maps a real symmetric persymmetric a to
// diag(B + JC, B - JC).
BlockPair block_diagonalize(const CMatrix& a, double tol = tol::kStruct);

// Eigenpairs of a lifted from the two half-size blocks: (v; Jv)/sqrt2 from
// B + JC and (u; -Ju)/sqrt2 from B - JC. degenerate is set when a value of one
// block lies within gap_tol of a value of the other block.
ClassifiedEigenbasis classified_eigenbasis(const CMatrix& a, double gap_tol = tol::kGap,
                                           double tol = tol::kStruct);

// Spectrum of the circulant with first row r: sqrt(n) * F_n r.
CVector circulant_eigenvalues(const CVector& r);

// Circulant matrix with first row r.
CMatrix circulant(const CVector& r);
// omega-circulant matrix with first row r.
CMatrix omega_circulant(const CVector& r, Complex omega);

struct OmegaTransform {
  CMatrix circ;  // d^H c d
  CMatrix d;     // diag(omega^(j/n)), principal branch
};

OmegaTransform omega_to_circulant(const CMatrix& c, Complex omega, double tol = tol::kStruct);

}  // namespace symtt
