#include "symtt/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symtt/error.hpp"

namespace symtt {

namespace {

double vec_max(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

Eigen::Index keep_count(const RVector& sigma, double rel_tol, Eigen::Index cap = 0) {
  if (sigma.size() == 0 || sigma[0] <= 0.0) return 1;
  Eigen::Index r = 0;
  const double cut = rel_tol * sigma[0];
  while (r < sigma.size() && sigma[r] > cut) ++r;
  if (cap > 0) r = std::min(r, cap);
  return std::max<Eigen::Index>(r, 1);
}

CMatrix stack_rows(const SitePair& s) {
  CMatrix out(2 * s.a0.rows(), s.a0.cols());
  out << s.a0, s.a1;
  return out;
}

CMatrix stack_cols(const SitePair& s) {
  CMatrix out(s.a0.rows(), 2 * s.a0.cols());
  out << s.a0, s.a1;
  return out;
}

SitePair split_rows(const CMatrix& m) {
  const Eigen::Index h = m.rows() / 2;
  return {m.topRows(h), m.bottomRows(h)};
}

SitePair split_cols(const CMatrix& m) {
  const Eigen::Index h = m.cols() / 2;
  return {m.leftCols(h), m.rightCols(h)};
}

CMatrix diag_sq(const RVector& l) { return l.array().square().matrix().cast<Complex>().asDiagonal(); }

RVector one() { return RVector::Ones(1); }

// Left-orthonormal basis U_j and singular values of the j-th matricization.
std::pair<CMatrix, RVector> matricization_basis(const CVector& x, int p, int j) {
  const Eigen::Index rows = Eigen::Index{1} << j;
  const Eigen::Index cols = Eigen::Index{1} << (p - j);
  // x is stored with i_1 most significant, so the row-major reshape is the
  // matricization; Eigen maps are column-major, hence the transpose.
  const CMatrix m = Eigen::Map<const CMatrix>(x.data(), cols, rows).transpose();
  SvdResult s = svd(m);
  const Eigen::Index r = keep_count(s.sigma, tol::kRank);
  return {s.u.leftCols(r), s.sigma.head(r)};
}

}  // namespace

MPSState::MPSState(Boundary boundary, std::vector<SitePair> sites)
    : boundary_(boundary), sites_(std::move(sites)) {
  if (sites_.empty()) throw Error(ErrorCode::kShapeMismatch, "an MPS needs at least one site");
  for (std::size_t j = 0; j < sites_.size(); ++j) {
    const auto& s = sites_[j];
    if (s.a0.rows() != s.a1.rows() || s.a0.cols() != s.a1.cols() || s.a0.size() == 0) {
      throw Error(ErrorCode::kShapeMismatch, "site " + std::to_string(j + 1) + " pair shapes differ");
    }
    if (!s.a0.allFinite() || !s.a1.allFinite()) {
      throw Error(ErrorCode::kShapeMismatch, "site " + std::to_string(j + 1) + " is not finite");
    }
    if (j + 1 < sites_.size() && s.a0.cols() != sites_[j + 1].a0.rows()) {
      throw Error(ErrorCode::kShapeMismatch, "bond " + std::to_string(j + 2) + " is inconsistent");
    }
  }
  const Eigen::Index d1 = sites_.front().a0.rows();
  const Eigen::Index dp = sites_.back().a0.cols();
  if (boundary_ == Boundary::kOpen && (d1 != 1 || dp != 1)) {
    throw Error(ErrorCode::kShapeMismatch, "open chains need D_1 = D_{p+1} = 1");
  }
  if (boundary_ == Boundary::kPeriodic && d1 != dp) {
    throw Error(ErrorCode::kShapeMismatch, "periodic chains need D_1 = D_{p+1}");
  }
}

std::vector<Eigen::Index> MPSState::dims() const {
  std::vector<Eigen::Index> d;
  d.push_back(sites_.front().a0.rows());
  for (const auto& s : sites_) d.push_back(s.a0.cols());
  return d;
}

Eigen::Index MPSState::max_bond() const {
  const auto d = dims();
  return *std::max_element(d.begin(), d.end());
}

double GaugeReport::max_left() const { return vec_max(left); }
double GaugeReport::max_right() const { return vec_max(right); }
double GaugeReport::max_strong() const { return vec_max(strong); }
double GaugeReport::max_vidal_left() const {
  return std::max(vec_max(vidal_left_a), vec_max(vidal_left_b));
}
double GaugeReport::max_vidal_right() const {
  return std::max(vec_max(vidal_right_a), vec_max(vidal_right_b));
}

int bits_for_length(Eigen::Index n) {
  int p = 0;
  while ((Eigen::Index{1} << p) < n && p <= kMaxVectorBits) ++p;
  if (n < 2 || (Eigen::Index{1} << p) != n) {
    throw Error(ErrorCode::kSizeMismatch, "vector length " + std::to_string(n) +
                                              " is not 2^p with 1 <= p <= 20");
  }
  return p;
}

CMatrix left_gram(const SitePair& s) { return s.a0.adjoint() * s.a0 + s.a1.adjoint() * s.a1; }
CMatrix right_gram(const SitePair& s) { return s.a0 * s.a0.adjoint() + s.a1 * s.a1.adjoint(); }

Complex eval_component(const MPSState& m, const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != m.p()) {
    throw Error(ErrorCode::kSizeMismatch, "bit string length differs from p");
  }
  CMatrix prod = m.site(0)[bits[0]];
  for (int j = 1; j < m.p(); ++j) prod = prod * m.site(j)[bits[j]];
  return prod.trace();
}

CVector to_vector(const MPSState& m) {
  if (m.p() > kMaxVectorBits) throw Error(ErrorCode::kTooLarge, "2^p exceeds 2^20");
  const Eigen::Index d1 = m.site(0).a0.rows();
  // Stacked D_1-row blocks, one per prefix (i_1..i_j), prefix-major.
  CMatrix blocks = CMatrix::Identity(d1, d1);
  for (int j = 0; j < m.p(); ++j) {
    const auto& s = m.site(j);
    const Eigen::Index count = blocks.rows() / d1;
    CMatrix next(2 * blocks.rows(), s.a0.cols());
    for (Eigen::Index b = 0; b < count; ++b) {
      const auto blk = blocks.middleRows(b * d1, d1);
      next.middleRows((2 * b) * d1, d1) = blk * s.a0;
      next.middleRows((2 * b + 1) * d1, d1) = blk * s.a1;
    }
    blocks = std::move(next);
  }
  const Eigen::Index n = blocks.rows() / d1;
  CVector x(n);
  for (Eigen::Index b = 0; b < n; ++b) x[b] = blocks.middleRows(b * d1, d1).trace();
  return x;
}

MPSState from_vector(const CVector& x, double tol) {
  const int p = bits_for_length(x.size());
  if (x.norm() == 0.0) throw Error(ErrorCode::kZeroVector, "cannot decompose the zero vector");
  const double cut = std::max(tol, tol::kRank);

  std::vector<SitePair> sites;
  // rem is D_j x 2^{p-j}, columns indexed by (i_j .. i_p) with i_j most significant.
  CMatrix rem = x.transpose();
  for (int j = 0; j + 1 < p; ++j) {
    const Eigen::Index d = rem.rows();
    const Eigen::Index half = rem.cols() / 2;
    CMatrix m(2 * d, half);
    m << rem.leftCols(half), rem.rightCols(half);
    SvdResult s = svd(m);
    const Eigen::Index r = keep_count(s.sigma, cut);
    sites.push_back(split_rows(s.u.leftCols(r)));
    rem = s.sigma.head(r).cast<Complex>().asDiagonal() * s.vh.topRows(r);
  }
  sites.push_back({rem.col(0), rem.col(1)});
  return MPSState(Boundary::kOpen, std::move(sites));
}

GaugeReport check_gauge(const MPSState& m) {
  GaugeReport g;
  for (const auto& s : m.sites()) {
    const Eigen::Index r = s.a0.rows();
    const Eigen::Index c = s.a0.cols();
    const double l = (left_gram(s) - CMatrix::Identity(c, c)).norm();
    g.left.push_back(l);
    g.right.push_back((right_gram(s) - CMatrix::Identity(r, r)).norm());
    CMatrix g0 = s.a0.adjoint() * s.a0;
    g0.diagonal().setZero();
    g.strong.push_back(l + g0.norm());
  }
  return g;
}

GaugeReport check_gauge(const VidalForm& v) {
  const MPSState left = vidal_to_a(v, Side::kLeft);
  const MPSState right = vidal_to_a(v, Side::kRight);
  GaugeReport g = check_gauge(left);
  const GaugeReport gr = check_gauge(right);
  g.right = gr.right;
  const int p = static_cast<int>(v.gammas.size());
  for (int j = 0; j < p; ++j) {
    const RVector lprev = j == 0 ? one() : v.lambdas[j - 1];
    const RVector lnext = j + 1 == p ? one() : v.lambdas[j];
    const auto& a = left.site(j);
    const auto& b = right.site(j);
    const CMatrix ln2 = diag_sq(lnext);
    const CMatrix lp2 = diag_sq(lprev);
    g.vidal_left_a.push_back(g.left[j]);
    g.vidal_left_b.push_back(
        (a.a0 * ln2 * a.a0.adjoint() + a.a1 * ln2 * a.a1.adjoint() - lp2).norm());
    g.vidal_right_a.push_back(gr.right[j]);
    g.vidal_right_b.push_back(
        (b.a0.adjoint() * lp2 * b.a0 + b.a1.adjoint() * lp2 * b.a1 - ln2).norm());
  }
  return g;
}

VidalForm vidal_from_vector(const CVector& x) {
  const int p = bits_for_length(x.size());
  if (std::abs(x.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::kNotNormalized, "vidal_from_vector needs a unit vector");
  }
  VidalForm v;
  CMatrix u_prev = CMatrix::Ones(1, 1);
  RVector l_prev = one();
  for (int j = 1; j <= p; ++j) {
    CMatrix u;
    RVector l;
    if (j < p) {
      std::tie(u, l) = matricization_basis(x, p, j);
    } else {
      u = x;
      l = one();
    }
    // Rows of u for prefix (i_1..i_{j-1}) and bit i sit at prefix * 2 + i.
    const Eigen::Index prefixes = u_prev.rows();
    CMatrix u0(prefixes, u.cols());
    CMatrix u1(prefixes, u.cols());
    for (Eigen::Index b = 0; b < prefixes; ++b) {
      u0.row(b) = u.row(2 * b);
      u1.row(b) = u.row(2 * b + 1);
    }
    const RVector inv = l_prev.cwiseInverse();
    SitePair g;
    g.a0 = inv.cast<Complex>().asDiagonal() * (u_prev.adjoint() * u0);
    g.a1 = inv.cast<Complex>().asDiagonal() * (u_prev.adjoint() * u1);
    v.gammas.push_back(std::move(g));
    if (j < p) v.lambdas.push_back(l);
    u_prev = std::move(u);
    l_prev = std::move(l);
  }
  return v;
}

MPSState vidal_to_a(const VidalForm& v, Side side) {
  const int p = static_cast<int>(v.gammas.size());
  if (p == 0 || static_cast<int>(v.lambdas.size()) != p - 1) {
    throw Error(ErrorCode::kShapeMismatch, "Vidal form needs p - 1 lambda vectors");
  }
  std::vector<SitePair> sites;
  for (int j = 0; j < p; ++j) {
    SitePair s = v.gammas[j];
    if (side == Side::kLeft && j > 0) {
      const auto l = v.lambdas[j - 1].cast<Complex>().asDiagonal();
      s.a0 = l * s.a0;
      s.a1 = l * s.a1;
    } else if (side == Side::kRight && j + 1 < p) {
      const auto l = v.lambdas[j].cast<Complex>().asDiagonal();
      s.a0 = s.a0 * l;
      s.a1 = s.a1 * l;
    }
    sites.push_back(std::move(s));
  }
  return MPSState(Boundary::kOpen, std::move(sites));
}

MPSState two_site_sweep(const MPSState& m, Side direction) {
  std::vector<SitePair> s = m.sites();
  const int p = m.p();
  auto step = [&](int j, bool to_right) {
    const CMatrix theta = stack_rows(s[j]) * stack_cols(s[j + 1]);
    const SvdResult f = svd(theta);
    const Eigen::Index r = keep_count(f.sigma, tol::kRank);
    const CMatrix sig = f.sigma.head(r).cast<Complex>().asDiagonal();
    if (to_right) {
      s[j] = split_rows(f.u.leftCols(r));
      s[j + 1] = split_cols(sig * f.vh.topRows(r));
    } else {
      s[j] = split_rows(f.u.leftCols(r) * sig);
      s[j + 1] = split_cols(f.vh.topRows(r));
    }
  };
  if (direction == Side::kLeft) {
    for (int j = 0; j + 1 < p; ++j) step(j, true);
  } else {
    for (int j = p - 2; j >= 0; --j) step(j, false);
  }
  return MPSState(m.boundary(), std::move(s));
}

MPSState strong_normalize(const MPSState& m) {
  if (m.boundary() != Boundary::kOpen) {
    throw Error(ErrorCode::kGaugeViolation, "strong normal form needs an open chain");
  }
  const GaugeReport g = check_gauge(m);
  for (int j = 0; j + 1 < m.p(); ++j) {
    if (g.left[j] > 1e-10) {
      throw Error(ErrorCode::kGaugeViolation,
                  "site " + std::to_string(j + 1) + " is not left-normalized");
    }
  }
  std::vector<SitePair> out;
  CMatrix v_prev = CMatrix::Ones(1, 1);
  for (int j = 0; j < m.p(); ++j) {
    const auto& s = m.site(j);
    if (j + 1 == m.p()) {
      out.push_back({v_prev * s.a0, v_prev * s.a1});
      break;
    }
    const FullSvdResult f = full_svd(s.a0);
    const CMatrix vh_adj = f.vh.adjoint();
    SitePair t{v_prev * s.a0 * vh_adj, v_prev * s.a1 * vh_adj};
    // Diagonal phase gauge: the pivot of each column is made real positive,
    // taken from A~0 when its column is nonzero and from A~1 otherwise.
    const Eigen::Index c = t.a0.cols();
    CVector ph = CVector::Ones(c);
    for (Eigen::Index k = 0; k < c; ++k) {
      const bool upper = k < f.sigma.size() && f.sigma[k] > tol::kRank;
      const CMatrix& src = upper ? t.a0 : t.a1;
      Eigen::Index piv = 0;
      src.col(k).cwiseAbs().maxCoeff(&piv);
      const Complex e = src(piv, k);
      if (std::abs(e) > 0.0) ph[k] = std::conj(e) / std::abs(e);
    }
    t.a0 = t.a0 * ph.asDiagonal();
    t.a1 = t.a1 * ph.asDiagonal();
    if (j == 0 && t.a0.cols() == 2) {
      const CMatrix e0{{1.0, 0.0}}, e1{{0.0, 1.0}};
      if ((t.a0 - e0).norm() < 1e-10 && (t.a1 - e1).norm() < 1e-10) {
        t.a0 = e0;
        t.a1 = e1;
      }
    }
    out.push_back(std::move(t));
    v_prev = ph.conjugate().asDiagonal() * f.vh;
  }
  return MPSState(Boundary::kOpen, std::move(out));
}

TruncateResult truncate(const MPSState& m, Eigen::Index d_max, double tol) {
  if (m.boundary() != Boundary::kOpen) {
    throw Error(ErrorCode::kBadParams, "truncate needs an open chain");
  }
  std::vector<SitePair> s = two_site_sweep(m, Side::kRight).sites();
  const double cut = std::max(tol, tol::kRank);
  double discarded = 0.0;
  for (int j = 0; j + 1 < m.p(); ++j) {
    const CMatrix theta = stack_rows(s[j]) * stack_cols(s[j + 1]);
    const SvdResult f = svd(theta);
    const Eigen::Index r = keep_count(f.sigma, cut, d_max);
    discarded += f.sigma.tail(f.sigma.size() - r).squaredNorm();
    s[j] = split_rows(f.u.leftCols(r));
    s[j + 1] = split_cols(f.sigma.head(r).cast<Complex>().asDiagonal() * f.vh.topRows(r));
  }
  return {MPSState(Boundary::kOpen, std::move(s)), discarded};
}

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      a(i, j) = Complex(re, im);
    }
  }
  return a;
}

CVector random_vector(Eigen::Index n, std::mt19937_64& rng) { return random_matrix(n, 1, rng); }

MPSState random_mps(Boundary boundary, const std::vector<Eigen::Index>& dims,
                    std::mt19937_64& rng) {
  if (dims.size() < 2) throw Error(ErrorCode::kShapeMismatch, "need at least two bond dims");
  std::vector<SitePair> sites;
  for (std::size_t j = 0; j + 1 < dims.size(); ++j) {
    CMatrix a0 = random_matrix(dims[j], dims[j + 1], rng);
    CMatrix a1 = random_matrix(dims[j], dims[j + 1], rng);
    sites.push_back({std::move(a0), std::move(a1)});
  }
  return MPSState(boundary, std::move(sites));
}

}  // namespace symtt
