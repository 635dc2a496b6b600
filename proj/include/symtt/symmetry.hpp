#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symtt/mps.hpp"

namespace symtt {

enum class SymmetryKind { kBitShift, kReverse, kBitFlip, kFullBit, kFirstSite, kLastSite };

std::string_view kind_name(SymmetryKind k);
SymmetryKind parse_kind(std::string_view s);

struct SymmetryWitness {
  SymmetryKind kind = SymmetryKind::kBitShift;
  // Block length for bitshift; sign (+1/-1) for bitflip, firstsite, lastsite.
  int param = 1;
  // reverse: S_1..S_p (S_0 = S_p). bitflip: U_1..U_p, involutions or +-1 diagonals.
  std::vector<CMatrix> mats;
};

// A symmetry-adapted state together with the matrices certifying it.
struct WitnessedState {
  MPSState state;
  SymmetryWitness witness;
};

// ---- vector level ----

enum class VectorSymmetry {
  kBitFlipPlus,   // J x = x
  kBitFlipMinus,  // J x = -x
  kShift,         // x_{i1..ip} = x_{i2..ip i1}
  kReverse,       // x_{i1..ip} = conj(x_{ip..i1})
  kFirstPlus,     // x = (b; b)
  kFirstMinus,    // x = (b; -b)
  kLastPlus,      // x_{..0} = x_{..1}
  kLastMinus,     // x_{..0} = -x_{..1}
};

std::string_view vector_symmetry_name(VectorSymmetry s);

// Each check is relative to ||x||; the zero vector reports nothing.
std::vector<VectorSymmetry> detect_vector_symmetries(const CVector& x, double tol = tol::kSymmetry);

// y_i = x at the index whose bits are rotated left by r (block shift).
CVector shift_bits(const CVector& x, int r = 1);
// conj(x) at the bit-reversed index.
CVector reverse_conj(const CVector& x);

double shift_defect(const CVector& x, int r = 1);
double bitflip_defect(const CVector& x, int sign);
double reverse_defect(const CVector& x);

CVector symmetrize_shift(const CVector& x, int r = 1);
CVector symmetrize_bitflip(const CVector& x, int sign);
CVector symmetrize_reverse(const CVector& x);

// ---- combinatorics ----

struct OrbitReport {
  std::string base;
  std::set<std::string> shift_orbit;
  std::set<std::string> flip_orbit;
  std::set<std::string> reverse_orbit;
};

OrbitReport orbits(std::string_view bits);

enum DofKind : unsigned { kDofShift = 1, kDofFlip = 2, kDofReverse = 4 };

struct DofReport {
  int p = 0;
  // One entry per nonempty subset of the requested kinds, e.g. "bitshift+reverse".
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::vector<double> reduction_factors;  // count / 2^p
};

// Number of index classes under the group generated by the kinds.
std::uint64_t orbit_count(int p, unsigned kinds);
DofReport dof_count(int p, unsigned kinds);

// ---- bit-shift ----

// Site-independent (r = 1) or r-periodic periodic chain from any MPS of a
// block-shift invariant vector. Bond dimension becomes (p / r) * max D_j.
MPSState ti_construct(const MPSState& m, int r = 1, double tol = tol::kSymmetry);
// Periodic chain with the same pair at every site.
MPSState ti_state(const CMatrix& a0, const CMatrix& a1, int p);
// Schur form (R, Q a1 Q^H); for a Hermitian pair (D, Q a1 Q^H) with D real diagonal.
std::pair<CMatrix, CMatrix> ti_normal_form(const CMatrix& a0, const CMatrix& a1);

// ---- reverse ----

WitnessedState reverse_construct(const MPSState& m, double tol = tol::kSymmetry);

// Even p = 2m: x = tr(U_1..U_m Sigma U_m^H..U_1^H Lambda).
// Odd p = 2m+1: x = tr(U_1..U_m U_{m+1} Sigma U_m^H..U_1^H Lambda).
struct ReverseNormalForm {
  int p = 0;
  std::vector<SitePair> u;  // m or m + 1 isometric pairs
  RVector sigma;
  RVector lambda;
};

ReverseNormalForm reverse_normal_form(const CVector& x, double tol = tol::kSymmetry);
ReverseNormalForm reverse_normal_form(const WitnessedState& ws);
MPSState to_mps(const ReverseNormalForm& nf);
// max_j ||sum_i U_j^iH U_j^i - I||
double unitarity_residual(const ReverseNormalForm& nf);

// ---- bit-flip ----

WitnessedState bitflip_construct(const MPSState& m, int sign, double tol = tol::kSymmetry);
// Conjugates every bond by the eigenbasis of its involution so that the
// witness becomes +-1 diagonal.
WitnessedState bitflip_normal_form(const MPSState& m, const SymmetryWitness& w,
                                   double tol = tol::kSymmetry);

// Heuristic ansatz: exchange matrices J_{D_j} as involutions. Nothing
// guarantees that a given vector admits this witness.
SymmetryWitness exchange_ansatz_witness(const std::vector<Eigen::Index>& dims, Boundary boundary);
// Random chain satisfying A_j^1 = s_j U_j A_j^0 U_{j+1} for the witness.
MPSState random_bitflip_mps(const SymmetryWitness& w, Boundary boundary,
                            const std::vector<Eigen::Index>& dims, std::mt19937_64& rng);

// ---- full-bit ----

// Periodic chain with A^0 = a, A^1 = J a J at every site.
MPSState fullbit_state(const CMatrix& a, int p);
// (Lambda, V^H (J a J) V) where a = V Lambda V^H.
std::pair<CMatrix, CMatrix> fullbit_normal_form(const CMatrix& a);

// ---- first / last site ----

// x = (b; sign b). b has length 2^{p-1}.
MPSState firstsite_construct(const CVector& b, int sign);
MPSState firstsite_construct(const MPSState& b, int sign);
// x_{..0} = b, x_{..1} = sign b.
MPSState lastsite_construct(const CVector& b, int sign);

// ---- verification ----

struct RelationReport {
  double relation = 0.0;
  double consistency = 0.0;  // reverse: S_j^H vs S_{p-j}; bitflip: U_j^2 vs I
  double max() const { return relation > consistency ? relation : consistency; }
};

RelationReport verify_relation(const MPSState& m, const SymmetryWitness& w);

}  // namespace symtt
