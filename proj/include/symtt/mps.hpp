#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "symtt/boundary.hpp"
#include "symtt/linalg.hpp"

namespace symtt {

// Matrices selected by bit 0 and bit 1 at one site.
struct SitePair {
  CMatrix a0;
  CMatrix a1;

  const CMatrix& operator[](int bit) const { return bit == 0 ? a0 : a1; }
  CMatrix& operator[](int bit) { return bit == 0 ? a0 : a1; }
};

// Chain of p site pairs; site j (0-based) has shape D_j x D_{j+1}.
class MPSState {
 public:
  // Throws ShapeMismatch when the bond chain is inconsistent or violates
  // the boundary condition.
  MPSState(Boundary boundary, std::vector<SitePair> sites);

  int p() const { return static_cast<int>(sites_.size()); }
  Boundary boundary() const { return boundary_; }
  const std::vector<SitePair>& sites() const { return sites_; }
  const SitePair& site(int j) const { return sites_[j]; }
  // D_1 .. D_{p+1}
  std::vector<Eigen::Index> dims() const;
  Eigen::Index max_bond() const;

 private:
  Boundary boundary_;
  std::vector<SitePair> sites_;
};

// x = Gamma_1 Lambda_1 Gamma_2 ... Lambda_{p-1} Gamma_p
struct VidalForm {
  std::vector<SitePair> gammas;
  std::vector<RVector> lambdas;  // p - 1 entries, each descending positive
};

struct GaugeReport {
  std::vector<double> left;    // ||sum_i A^iH A^i - I||
  std::vector<double> right;   // ||sum_i A^i A^iH - I||
  std::vector<double> strong;  // left plus off-diagonal mass of A^0H A^0
  // Vidal conditions, filled only by the VidalForm overload.
  std::vector<double> vidal_left_a;
  std::vector<double> vidal_left_b;
  std::vector<double> vidal_right_a;
  std::vector<double> vidal_right_b;

  double max_left() const;
  double max_right() const;
  double max_strong() const;
  double max_vidal_left() const;
  double max_vidal_right() const;
};

enum class Side { kLeft, kRight };

inline constexpr int kMaxVectorBits = 20;

// Number of sites p with n == 2^p; throws SizeMismatch otherwise.
int bits_for_length(Eigen::Index n);

Complex eval_component(const MPSState& m, const std::vector<int>& bits);
// Bit i_1 is the most significant bit of the linear index.
CVector to_vector(const MPSState& m);

// Left-normalized open-boundary TT-SVD. Singular values at or below
// max(tol, tol::kRank) * sigma_max of each matricization are dropped; the last
// site carries the norm.
MPSState from_vector(const CVector& x, double tol = 0.0);

GaugeReport check_gauge(const MPSState& m);
GaugeReport check_gauge(const VidalForm& v);

VidalForm vidal_from_vector(const CVector& x);
// Left: A_j = Lambda_{j-1} Gamma_j. Right: A_j = Gamma_j Lambda_j.
MPSState vidal_to_a(const VidalForm& v, Side side);

// Stacked two-site SVD sweep. Side::kLeft sweeps from site 1 towards site p and
// leaves site p as the carrier; Side::kRight sweeps the other way and leaves
// site 1 as the carrier.
MPSState two_site_sweep(const MPSState& m, Side direction);

// Requires an open-boundary, left-normalized chain (all sites but the last).
MPSState strong_normalize(const MPSState& m);

struct TruncateResult {
  MPSState state;
  double discarded_weight = 0.0;  // sum of dropped sigma^2
};

// Keeps at most d_max values per bond (d_max <= 0 means no cap) and drops
// sigma <= tol * sigma_max.
TruncateResult truncate(const MPSState& m, Eigen::Index d_max, double tol = 0.0);

// Random complex Gaussian sites with the given bond dims D_1 .. D_{p+1}.
MPSState random_mps(Boundary boundary, const std::vector<Eigen::Index>& dims, std::mt19937_64& rng);
CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
CVector random_vector(Eigen::Index n, std::mt19937_64& rng);

CMatrix left_gram(const SitePair& s);   // A0^H A0 + A1^H A1
CMatrix right_gram(const SitePair& s);  // A0 A0^H + A1 A1^H

}  // namespace symtt
