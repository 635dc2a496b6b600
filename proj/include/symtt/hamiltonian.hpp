#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symtt/boundary.hpp"
#include "symtt/linalg.hpp"
#include "symtt/structured.hpp"

namespace symtt {

// Largest d^p accepted by dense assembly and by ground_state.
inline constexpr Eigen::Index kMaxDenseDim = Eigen::Index{1} << 13;
inline constexpr Eigen::Index kMaxEighDim = 4096;

// coeff * (Q_1 x ... x Q_p); an empty optional stands for the identity.
struct LocalTermSpec {
  double coeff = 1.0;
  std::vector<std::optional<CMatrix>> factors;
};

struct ModelParams {
  double jx = 1.0;
  double jy = 1.0;
  double jz = 1.0;
  double lambda = 0.0;
  double theta = 0.0;
};

struct HamiltonianSpec {
  int p = 0;
  int d = 2;
  Boundary boundary = Boundary::kOpen;
  std::vector<LocalTermSpec> terms;
  ModelParams params;
  std::string name;
};

struct SpectrumReport {
  RVector values;
  double ground_energy = 0.0;
  CVector ground_vector;
  double gap = 0.0;
  // +1 when J v = v, -1 when J v = -v; unset when the gap is below tol::kGap
  // or the vector is neither.
  std::optional<int> parity;
};

CMatrix pauli(std::string_view name);
CMatrix spin1(std::string_view name);

const std::vector<std::string>& model_names();

// Builds the term list of a named model. Pair terms come first (p-1 bonds,
// plus the (p,1) bond for periodic chains), then the p field terms.
HamiltonianSpec model(std::string_view name, int p, const ModelParams& params, Boundary boundary);

// sum_k a_k X_k + b_k Y_k on p = a.size() sites.
HamiltonianSpec anisotropic_xy(const RVector& a, const RVector& b);

// Multiplies every coefficient by f.
HamiltonianSpec scale(HamiltonianSpec spec, double f);

CMatrix assemble(const HamiltonianSpec& spec);

// All 2^p sums +-r_1 +- ... +- r_p, ascending.
RVector closed_form_hx_spectrum(int p, const RVector& r);

struct XYTransform {
  std::vector<CMatrix> d;  // per site diag(1, e^{i phi_k})
  RVector r;               // sqrt(a_k^2 + b_k^2)
};

// D^H H D = sum_k r_k X_k with D = d_1 x ... x d_p and H = anisotropic_xy(a, b).
XYTransform anisotropic_xy_transform(const RVector& a, const RVector& b);

// (F_2 x ... x F_2) h (F_2 x ... x F_2) via a fast Walsh-Hadamard transform.
CMatrix fourier_conjugate(const CMatrix& h, int p);

StructureFlags certify_structure(const HamiltonianSpec& spec, double tol = tol::kStruct);

SpectrumReport ground_state(const HamiltonianSpec& spec);

}  // namespace symtt
