#include "symtt/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "symtt/error.hpp"

namespace symtt {

namespace {

using Index = Eigen::Index;

std::uint64_t rotl(std::uint64_t v, int r, int p) {
  const std::uint64_t mask = (std::uint64_t{1} << p) - 1;
  r %= p;
  if (r == 0) return v;
  return ((v << r) | (v >> (p - r))) & mask;
}

std::uint64_t bit_reverse(std::uint64_t v, int p) {
  std::uint64_t out = 0;
  for (int k = 0; k < p; ++k) out |= ((v >> k) & 1) << (p - 1 - k);
  return out;
}

double relative(double defect, const CVector& x) {
  const double n = x.norm();
  return n == 0.0 ? 0.0 : defect / n;
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::kBadParams, "sign must be +1 or -1");
}

CMatrix swap_matrix(Index a, Index b) {
  // [[0, I_a], [I_b, 0]]: top-right block a x a, bottom-left block b x b.
  CMatrix s = CMatrix::Zero(a + b, a + b);
  s.topRightCorner(a, a).setIdentity();
  s.bottomLeftCorner(b, b).setIdentity();
  return s;
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix hcat(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

CMatrix vcat(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

CMatrix pad(const CMatrix& a, Index d) {
  CMatrix out = CMatrix::Zero(d, d);
  out.topLeftCorner(a.rows(), a.cols()) = a;
  return out;
}

CMatrix inverse(const CMatrix& a) {
  if (!is_square(a)) throw Error(ErrorCode::kShapeMismatch, "witness matrix is not square");
  Eigen::FullPivLU<CMatrix> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorCode::kWitnessViolation, "witness matrix is singular");
  return lu.inverse();
}

double pair_diff(const SitePair& a, const SitePair& b) {
  if (a.a0.rows() != b.a0.rows() || a.a0.cols() != b.a0.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "site shapes differ");
  }
  return std::max((a.a0 - b.a0).norm(), (a.a1 - b.a1).norm());
}

void require_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kShapeMismatch, "witness shape mismatch");
}

// Column basis of the range of a projector.
CMatrix range_basis(const CMatrix& proj) {
  if (proj.norm() == 0.0) return CMatrix(proj.rows(), 0);
  const SvdResult s = svd(proj);
  return s.u.leftCols(s.rank(1e-10));
}

MPSState single_site(Complex b, int sign) {
  std::vector<SitePair> sites{{CMatrix::Constant(1, 1, b), CMatrix::Constant(1, 1, static_cast<double>(sign) * b)}};
  return MPSState(Boundary::kOpen, std::move(sites));
}

SitePair stacked_isometry(const CMatrix& u) { return {u.topRows(u.rows() / 2), u.bottomRows(u.rows() / 2)}; }

}  // namespace

std::string_view kind_name(SymmetryKind k) {
  switch (k) {
    case SymmetryKind::kBitShift: return "bitshift";
    case SymmetryKind::kReverse: return "reverse";
    case SymmetryKind::kBitFlip: return "bitflip";
    case SymmetryKind::kFullBit: return "fullbit";
    case SymmetryKind::kFirstSite: return "firstsite";
    case SymmetryKind::kLastSite: return "lastsite";
  }
  return "unknown";
}

SymmetryKind parse_kind(std::string_view s) {
  for (auto k : {SymmetryKind::kBitShift, SymmetryKind::kReverse, SymmetryKind::kBitFlip,
                 SymmetryKind::kFullBit, SymmetryKind::kFirstSite, SymmetryKind::kLastSite}) {
    if (kind_name(k) == s) return k;
  }
  throw Error(ErrorCode::kUnknownName, "unknown symmetry kind '" + std::string(s) + "'");
}

std::string_view vector_symmetry_name(VectorSymmetry s) {
  switch (s) {
    case VectorSymmetry::kBitFlipPlus: return "bitflip+";
    case VectorSymmetry::kBitFlipMinus: return "bitflip-";
    case VectorSymmetry::kShift: return "bitshift";
    case VectorSymmetry::kReverse: return "reverse";
    case VectorSymmetry::kFirstPlus: return "firstsite+";
    case VectorSymmetry::kFirstMinus: return "firstsite-";
    case VectorSymmetry::kLastPlus: return "lastsite+";
    case VectorSymmetry::kLastMinus: return "lastsite-";
  }
  return "unknown";
}

CVector shift_bits(const CVector& x, int r) {
  const int p = bits_for_length(x.size());
  CVector y(x.size());
  for (Index i = 0; i < x.size(); ++i) y[i] = x[static_cast<Index>(rotl(i, r, p))];
  return y;
}

CVector reverse_conj(const CVector& x) {
  const int p = bits_for_length(x.size());
  CVector y(x.size());
  for (Index i = 0; i < x.size(); ++i) y[i] = std::conj(x[static_cast<Index>(bit_reverse(i, p))]);
  return y;
}

double shift_defect(const CVector& x, int r) { return relative((shift_bits(x, r) - x).norm(), x); }

double bitflip_defect(const CVector& x, int sign) {
  check_sign(sign);
  return relative((CVector(x.reverse()) - static_cast<double>(sign) * x).norm(), x);
}

double reverse_defect(const CVector& x) { return relative((reverse_conj(x) - x).norm(), x); }

std::vector<VectorSymmetry> detect_vector_symmetries(const CVector& x, double tol) {
  std::vector<VectorSymmetry> out;
  if (x.norm() == 0.0) return out;
  const Index h = x.size() / 2;
  if (bitflip_defect(x, 1) <= tol) out.push_back(VectorSymmetry::kBitFlipPlus);
  if (bitflip_defect(x, -1) <= tol) out.push_back(VectorSymmetry::kBitFlipMinus);
  if (shift_defect(x) <= tol) out.push_back(VectorSymmetry::kShift);
  if (reverse_defect(x) <= tol) out.push_back(VectorSymmetry::kReverse);
  if (relative((x.head(h) - x.tail(h)).norm(), x) <= tol) out.push_back(VectorSymmetry::kFirstPlus);
  if (relative((x.head(h) + x.tail(h)).norm(), x) <= tol) out.push_back(VectorSymmetry::kFirstMinus);
  const auto even = Eigen::Map<const CVector, 0, Eigen::InnerStride<2>>(x.data(), h);
  const auto odd = Eigen::Map<const CVector, 0, Eigen::InnerStride<2>>(x.data() + 1, h);
  if (relative((even - odd).norm(), x) <= tol) out.push_back(VectorSymmetry::kLastPlus);
  if (relative((even + odd).norm(), x) <= tol) out.push_back(VectorSymmetry::kLastMinus);
  return out;
}

CVector symmetrize_shift(const CVector& x, int r) {
  const int p = bits_for_length(x.size());
  if (r < 1 || p % r != 0) throw Error(ErrorCode::kBadParams, "block length must divide p");
  CVector acc = CVector::Zero(x.size());
  CVector cur = x;
  for (int k = 0; k < p / r; ++k) {
    acc += cur;
    cur = shift_bits(cur, r);
  }
  return acc / static_cast<double>(p / r);
}

CVector symmetrize_bitflip(const CVector& x, int sign) {
  check_sign(sign);
  return 0.5 * (x + static_cast<double>(sign) * CVector(x.reverse()));
}

CVector symmetrize_reverse(const CVector& x) { return 0.5 * (x + reverse_conj(x)); }

OrbitReport orbits(std::string_view bits) {
  if (bits.empty() || bits.size() > 64 ||
      bits.find_first_not_of("01") != std::string_view::npos) {
    throw Error(ErrorCode::kBadParams, "bits must be a nonempty 0/1 string");
  }
  OrbitReport r;
  r.base = std::string(bits);
  std::string cur = r.base;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    r.shift_orbit.insert(cur);
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
  }
  std::string flipped = r.base;
  for (auto& c : flipped) c = c == '0' ? '1' : '0';
  r.flip_orbit = {r.base, flipped};
  r.reverse_orbit = {r.base, std::string(r.base.rbegin(), r.base.rend())};
  return r;
}

std::uint64_t orbit_count(int p, unsigned kinds) {
  if (p < 1) throw Error(ErrorCode::kBadParams, "p must be at least 1");
  if (p > 24) throw Error(ErrorCode::kTooLarge, "orbit enumeration supports p <= 24");
  const std::uint64_t n = std::uint64_t{1} << p;
  const std::uint64_t mask = n - 1;
  const int rotations = kinds & kDofShift ? p : 1;
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < n; ++s) {
    std::uint64_t variants[4];
    int nv = 0;
    for (int f = 0; f < (kinds & kDofFlip ? 2 : 1); ++f) {
      for (int rv = 0; rv < (kinds & kDofReverse ? 2 : 1); ++rv) {
        std::uint64_t v = f ? (~s & mask) : s;
        if (rv) v = bit_reverse(v, p);
        variants[nv++] = v;
      }
    }
    bool canonical = true;
    for (int k = 0; k < nv && canonical; ++k) {
      std::uint64_t v = variants[k];
      for (int r = 0; r < rotations; ++r) {
        if (v < s) {
          canonical = false;
          break;
        }
        v = rotl(v, 1, p);
      }
    }
    if (canonical) ++count;
  }
  return count;
}

DofReport dof_count(int p, unsigned kinds) {
  if ((kinds & 7u) == 0) throw Error(ErrorCode::kBadParams, "no symmetry kinds selected");
  DofReport r;
  r.p = p;
  const double total = std::ldexp(1.0, p);
  for (unsigned sub = 1; sub < 8; ++sub) {
    if ((sub & ~kinds) != 0) continue;
    std::string name;
    for (auto [bit, label] : {std::pair{kDofShift, "bitshift"}, std::pair{kDofFlip, "bitflip"},
                              std::pair{kDofReverse, "reverse"}}) {
      if (!(sub & bit)) continue;
      if (!name.empty()) name += "+";
      name += label;
    }
    const std::uint64_t c = orbit_count(p, sub);
    r.counts.emplace_back(name, c);
    r.reduction_factors.push_back(static_cast<double>(c) / total);
  }
  return r;
}

MPSState ti_state(const CMatrix& a0, const CMatrix& a1, int p) {
  if (p < 1) throw Error(ErrorCode::kBadParams, "p must be at least 1");
  if (!is_square(a0) || a0.rows() != a1.rows() || a0.cols() != a1.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "TI pairs must be square and equal in size");
  }
  return MPSState(Boundary::kPeriodic, std::vector<SitePair>(p, SitePair{a0, a1}));
}

MPSState ti_construct(const MPSState& m, int r, double tol) {
  const int p = m.p();
  if (r < 1 || p % r != 0) throw Error(ErrorCode::kBadParams, "block length must divide p");
  const CVector x = to_vector(m);
  if (shift_defect(x, r) > tol) {
    throw Error(ErrorCode::kNotShiftInvariant, "vector is not shift invariant");
  }
  const int q = p / r;
  const auto dims = m.dims();
  const Index d = *std::max_element(dims.begin(), dims.end() - 1);
  const double c = std::pow(static_cast<double>(q), -1.0 / p);

  std::vector<SitePair> period;
  for (int s = 0; s < r; ++s) {
    SitePair out{CMatrix::Zero(q * d, q * d), CMatrix::Zero(q * d, q * d)};
    for (int k = 0; k < q; ++k) {
      const SitePair& b = m.site(k * r + s);
      // Within a block the sites stay on the diagonal; the last site of each
      // block links block k to block k + 1.
      const Index col = s + 1 < r ? k : (k + 1) % q;
      for (int bit = 0; bit < 2; ++bit) out[bit].block(k * d, col * d, d, d) = c * pad(b[bit], d);
    }
    period.push_back(std::move(out));
  }
  std::vector<SitePair> sites;
  for (int j = 0; j < p; ++j) sites.push_back(period[j % r]);
  return MPSState(Boundary::kPeriodic, std::move(sites));
}

std::pair<CMatrix, CMatrix> ti_normal_form(const CMatrix& a0, const CMatrix& a1) {
  if (!is_square(a0) || a0.rows() != a1.rows() || a0.cols() != a1.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "TI pairs must be square and equal in size");
  }
  const bool hermitian = hermitian_defect(a0) <= tol::kLinear * a0.norm() &&
                         hermitian_defect(a1) <= tol::kLinear * a1.norm();
  if (hermitian) {
    const EighResult e = eigh(a0);
    return {diag(e.values), e.vectors.adjoint() * a1 * e.vectors};
  }
  const SchurResult s = schur(a0);
  return {s.t, s.q * a1 * s.q.adjoint()};
}

WitnessedState reverse_construct(const MPSState& m, double tol) {
  const CVector x = to_vector(m);
  if (reverse_defect(x) > tol) {
    throw Error(ErrorCode::kNotReverseSymmetric, "vector is not reverse symmetric");
  }
  const int p = m.p();
  const bool open = m.boundary() == Boundary::kOpen;
  SymmetryWitness w;
  w.kind = SymmetryKind::kReverse;
  if (open && p == 1) {
    w.mats = {CMatrix::Ones(1, 1)};
    return {m, w};
  }
  const auto dims = m.dims();
  const double c = std::pow(2.0, -1.0 / p);
  std::vector<SitePair> sites;
  for (int j = 0; j < p; ++j) {
    const SitePair& b = m.site(j);
    const SitePair& mirror = m.site(p - 1 - j);
    SitePair a;
    for (int bit = 0; bit < 2; ++bit) {
      const CMatrix mh = mirror[bit].adjoint();
      if (open && j == 0) {
        a[bit] = c * hcat(b[bit], mh);
      } else if (open && j == p - 1) {
        a[bit] = c * vcat(b[bit], mh);
      } else {
        a[bit] = c * block_diag(b[bit], mh);
      }
    }
    sites.push_back(std::move(a));
  }
  for (int k = 1; k <= p; ++k) {
    if (k == p && open) {
      w.mats.push_back(CMatrix::Ones(1, 1));
    } else {
      w.mats.push_back(swap_matrix(dims[k], dims[p - k]));
    }
  }
  return {MPSState(m.boundary(), std::move(sites)), std::move(w)};
}

ReverseNormalForm reverse_normal_form(const WitnessedState& ws) {
  const MPSState& a = ws.state;
  const auto& s = ws.witness.mats;
  const int p = a.p();
  if (ws.witness.kind != SymmetryKind::kReverse || static_cast<int>(s.size()) != p) {
    throw Error(ErrorCode::kShapeMismatch, "reverse normal form needs p reverse witnesses");
  }
  if (p < 2) throw Error(ErrorCode::kBadParams, "reverse normal form needs p >= 2");
  const int m = p / 2;

  CMatrix sp_inv = inverse(s[p - 1]);
  sp_inv = (0.5 * (sp_inv + sp_inv.adjoint())).eval();
  const EighResult wl = eigh(sp_inv);

  ReverseNormalForm nf;
  nf.p = p;
  nf.lambda = wl.values;
  CMatrix carry = wl.vectors.adjoint();
  for (int j = 0; j < m; ++j) {
    const SitePair& site = a.site(j);
    CMatrix stacked(2 * carry.rows(), site.a0.cols());
    stacked << carry * site.a0, carry * site.a1;
    const SvdResult f = svd(stacked);
    const Index r = std::max<Index>(f.rank(), 1);
    nf.u.push_back(stacked_isometry(f.u.leftCols(r)));
    carry = f.sigma.head(r).cast<Complex>().asDiagonal() * f.vh.topRows(r);
  }
  if (p % 2 == 0) {
    CMatrix cm = carry * s[m - 1] * carry.adjoint();
    cm = (0.5 * (cm + cm.adjoint())).eval();
    const EighResult e = eigh(cm);
    nf.sigma = e.values;
    nf.u[m - 1].a0 = nf.u[m - 1].a0 * e.vectors;
    nf.u[m - 1].a1 = nf.u[m - 1].a1 * e.vectors;
  } else {
    const SitePair& mid = a.site(m);
    CMatrix stacked(2 * carry.rows(), carry.rows());
    stacked << carry * mid.a0 * s[m] * carry.adjoint(), carry * mid.a1 * s[m] * carry.adjoint();
    const SvdResult f = svd(stacked);
    nf.sigma = f.sigma;
    const CMatrix& x = f.vh;
    SitePair um = stacked_isometry(f.u);
    um.a0 = x * um.a0;
    um.a1 = x * um.a1;
    nf.u[m - 1].a0 = nf.u[m - 1].a0 * x.adjoint();
    nf.u[m - 1].a1 = nf.u[m - 1].a1 * x.adjoint();
    nf.u.push_back(std::move(um));
  }
  return nf;
}

ReverseNormalForm reverse_normal_form(const CVector& x, double tol) {
  if (reverse_defect(x) > tol) {
    throw Error(ErrorCode::kNotReverseSymmetric, "vector is not reverse symmetric");
  }
  return reverse_normal_form(reverse_construct(from_vector(x), tol));
}

MPSState to_mps(const ReverseNormalForm& nf) {
  const int m = nf.p / 2;
  const bool odd = nf.p % 2 == 1;
  if (static_cast<int>(nf.u.size()) != m + (odd ? 1 : 0) || m < 1) {
    throw Error(ErrorCode::kShapeMismatch, "normal form has the wrong number of factors");
  }
  const CMatrix sig = diag(nf.sigma);
  std::vector<SitePair> sites(nf.u.begin(), nf.u.begin() + m);
  if (odd) sites.push_back({nf.u[m].a0 * sig, nf.u[m].a1 * sig});
  for (int j = m - 1; j >= 0; --j) {
    SitePair t{nf.u[j].a0.adjoint(), nf.u[j].a1.adjoint()};
    if (!odd && j == m - 1) {
      t.a0 = sig * t.a0;
      t.a1 = sig * t.a1;
    }
    if (j == 0) {
      t.a0 = t.a0 * diag(nf.lambda);
      t.a1 = t.a1 * diag(nf.lambda);
    }
    sites.push_back(std::move(t));
  }
  const Boundary b = sites.front().a0.rows() == 1 ? Boundary::kOpen : Boundary::kPeriodic;
  return MPSState(b, std::move(sites));
}

double unitarity_residual(const ReverseNormalForm& nf) {
  double worst = 0.0;
  for (const auto& u : nf.u) {
    worst = std::max(worst, (left_gram(u) - identity(u.a0.cols())).norm());
  }
  return worst;
}

WitnessedState bitflip_construct(const MPSState& m, int sign, double tol) {
  check_sign(sign);
  const CVector x = to_vector(m);
  if (bitflip_defect(x, sign) > tol) {
    throw Error(ErrorCode::kSymmetryMismatch, "J x differs from sign * x");
  }
  const int p = m.p();
  const bool open = m.boundary() == Boundary::kOpen;
  SymmetryWitness w;
  w.kind = SymmetryKind::kBitFlip;
  w.param = sign;
  if (open && p == 1) {
    w.mats = {CMatrix::Ones(1, 1)};
    return {m, w};
  }
  const double c = std::pow(2.0, -1.0 / p);
  std::vector<SitePair> sites;
  for (int j = 0; j < p; ++j) {
    const SitePair& b = m.site(j);
    const double s = j == 0 ? sign : 1.0;
    SitePair a;
    for (int bit = 0; bit < 2; ++bit) {
      const CMatrix& same = b[bit];
      const CMatrix other = s * b[1 - bit];
      if (open && j == 0) {
        a[bit] = c * hcat(same, other);
      } else if (open && j == p - 1) {
        a[bit] = c * vcat(same, other);
      } else {
        a[bit] = c * block_diag(same, other);
      }
    }
    sites.push_back(std::move(a));
  }
  const auto dims = m.dims();
  for (int j = 0; j < p; ++j) {
    if (open && j == 0) {
      w.mats.push_back(CMatrix::Ones(1, 1));
    } else {
      w.mats.push_back(swap_matrix(dims[j], dims[j]));
    }
  }
  return {MPSState(m.boundary(), std::move(sites)), std::move(w)};
}

WitnessedState bitflip_normal_form(const MPSState& m, const SymmetryWitness& w, double tol) {
  if (w.kind != SymmetryKind::kBitFlip) {
    throw Error(ErrorCode::kWitnessViolation, "witness is not a bit-flip witness");
  }
  const RelationReport rep = verify_relation(m, w);
  double scale = 1.0;
  for (const auto& s : m.sites()) scale = std::max({scale, s.a0.norm(), s.a1.norm()});
  if (rep.relation > tol * scale) {
    throw Error(ErrorCode::kWitnessViolation, "bit-flip relation does not hold");
  }
  const int p = m.p();
  std::vector<CMatrix> s_mats;
  std::vector<CMatrix> s_inv;
  SymmetryWitness out_w;
  out_w.kind = SymmetryKind::kBitFlip;
  out_w.param = w.param;
  for (const auto& u : w.mats) {
    const Index n = u.rows();
    if ((u * u - identity(n)).norm() > tol * std::sqrt(static_cast<double>(n))) {
      throw Error(ErrorCode::kNotDiagonalizable, "witness is not an involution");
    }
    const CMatrix plus = range_basis(0.5 * (identity(n) + u));
    const CMatrix minus = range_basis(0.5 * (identity(n) - u));
    if (plus.cols() + minus.cols() != n) {
      throw Error(ErrorCode::kNotDiagonalizable, "involution eigenspaces do not span");
    }
    CMatrix sinv(n, n);
    sinv << plus, minus;
    RVector d(n);
    d.head(plus.cols()).setOnes();
    d.tail(minus.cols()).setConstant(-1.0);
    s_mats.push_back(inverse(sinv));
    s_inv.push_back(std::move(sinv));
    out_w.mats.push_back(diag(d));
  }
  std::vector<SitePair> sites;
  for (int j = 0; j < p; ++j) {
    const SitePair& a = m.site(j);
    const int nx = (j + 1) % p;
    sites.push_back({s_mats[j] * a.a0 * s_inv[nx], s_mats[j] * a.a1 * s_inv[nx]});
  }
  return {MPSState(m.boundary(), std::move(sites)), std::move(out_w)};
}

SymmetryWitness exchange_ansatz_witness(const std::vector<Index>& dims, Boundary boundary) {
  if (dims.size() < 2) throw Error(ErrorCode::kShapeMismatch, "need at least two bond dims");
  if (boundary == Boundary::kOpen && (dims.front() != 1 || dims.back() != 1)) {
    throw Error(ErrorCode::kShapeMismatch, "open chains need D_1 = D_{p+1} = 1");
  }
  SymmetryWitness w;
  w.kind = SymmetryKind::kBitFlip;
  w.param = 1;
  for (std::size_t j = 0; j + 1 < dims.size(); ++j) w.mats.push_back(exchange_matrix(dims[j]));
  return w;
}

MPSState random_bitflip_mps(const SymmetryWitness& w, Boundary boundary,
                            const std::vector<Index>& dims, std::mt19937_64& rng) {
  const int p = static_cast<int>(dims.size()) - 1;
  if (p < 1 || static_cast<int>(w.mats.size()) != p) {
    throw Error(ErrorCode::kShapeMismatch, "need one witness per site");
  }
  std::vector<SitePair> sites;
  for (int j = 0; j < p; ++j) {
    const CMatrix& u = w.mats[j];
    const CMatrix& v = w.mats[(j + 1) % p];
    if (u.rows() != dims[j] || v.rows() != dims[j + 1]) {
      throw Error(ErrorCode::kShapeMismatch, "witness size differs from the bond dimension");
    }
    CMatrix a0 = random_matrix(dims[j], dims[j + 1], rng);
    const double s = j == 0 ? w.param : 1.0;
    CMatrix a1 = s * u * a0 * v;
    sites.push_back({std::move(a0), std::move(a1)});
  }
  return MPSState(boundary, std::move(sites));
}

MPSState fullbit_state(const CMatrix& a, int p) { return ti_state(a, flip_both(a), p); }

std::pair<CMatrix, CMatrix> fullbit_normal_form(const CMatrix& a) {
  const EighResult e = eigh(a);
  return {diag(e.values), e.vectors.adjoint() * flip_both(a) * e.vectors};
}

MPSState firstsite_construct(const MPSState& b, int sign) {
  check_sign(sign);
  const Index d = b.site(0).a0.rows();
  std::vector<SitePair> sites{{identity(d), static_cast<double>(sign) * identity(d)}};
  sites.insert(sites.end(), b.sites().begin(), b.sites().end());
  return MPSState(b.boundary(), std::move(sites));
}

MPSState firstsite_construct(const CVector& b, int sign) {
  check_sign(sign);
  if (b.norm() == 0.0) throw Error(ErrorCode::kZeroVector, "b must be nonzero");
  if (b.size() == 1) {
    return single_site(b[0], sign);
  }
  return firstsite_construct(from_vector(b), sign);
}

MPSState lastsite_construct(const CVector& b, int sign) {
  check_sign(sign);
  if (b.norm() == 0.0) throw Error(ErrorCode::kZeroVector, "b must be nonzero");
  if (b.size() == 1) {
    return single_site(b[0], sign);
  }
  std::vector<SitePair> sites = from_vector(b).sites();
  sites.push_back({CMatrix::Ones(1, 1), CMatrix::Constant(1, 1, static_cast<double>(sign))});
  return MPSState(Boundary::kOpen, std::move(sites));
}

RelationReport verify_relation(const MPSState& m, const SymmetryWitness& w) {
  const int p = m.p();
  RelationReport rep;
  switch (w.kind) {
    case SymmetryKind::kBitShift: {
      const int r = w.param;
      if (r < 1) throw Error(ErrorCode::kBadParams, "block length must be positive");
      for (int j = 0; j + r < p; ++j) rep.relation = std::max(rep.relation, pair_diff(m.site(j), m.site(j + r)));
      break;
    }
    case SymmetryKind::kReverse: {
      if (static_cast<int>(w.mats.size()) != p) {
        throw Error(ErrorCode::kShapeMismatch, "reverse witness needs p matrices");
      }
      // S_k for k = 0..p with S_0 = S_p.
      auto s = [&](int k) -> const CMatrix& { return w.mats[(k == 0 ? p : k) - 1]; };
      for (int j = 1; j <= p; ++j) {
        const SitePair& aj = m.site(j - 1);
        const SitePair& am = m.site(p - j);
        const CMatrix left = inverse(s(p - j));
        const CMatrix& right = s(p + 1 - j);
        for (int bit = 0; bit < 2; ++bit) {
          require_product(left, am[bit]);
          require_product(am[bit], right);
          const CMatrix rhs = left * am[bit] * right;
          if (rhs.rows() != aj[bit].cols() || rhs.cols() != aj[bit].rows()) {
            throw Error(ErrorCode::kShapeMismatch, "witness shape mismatch");
          }
          rep.relation = std::max(rep.relation, (aj[bit].adjoint() - rhs).norm());
        }
        const CMatrix& sj = s(j);
        const CMatrix& sm = s(p - j);
        if (sj.rows() != sm.cols() || sj.cols() != sm.rows()) {
          throw Error(ErrorCode::kShapeMismatch, "reverse witness sizes are inconsistent");
        }
        rep.consistency = std::max(rep.consistency, (sj.adjoint() - sm).norm());
      }
      break;
    }
    case SymmetryKind::kBitFlip: {
      if (static_cast<int>(w.mats.size()) != p) {
        throw Error(ErrorCode::kShapeMismatch, "bit-flip witness needs p matrices");
      }
      for (int j = 0; j < p; ++j) {
        const CMatrix& u = w.mats[j];
        const CMatrix& v = w.mats[(j + 1) % p];
        const SitePair& a = m.site(j);
        const double s = j == 0 ? w.param : 1.0;
        for (int bit = 0; bit < 2; ++bit) {
          require_product(u, a[1 - bit]);
          require_product(a[1 - bit], v);
          rep.relation = std::max(rep.relation, (a[bit] - s * u * a[1 - bit] * v).norm());
        }
        if (!is_square(u)) throw Error(ErrorCode::kShapeMismatch, "witness is not square");
        rep.consistency = std::max(rep.consistency, (u * u - identity(u.rows())).norm());
      }
      break;
    }
    case SymmetryKind::kFullBit: {
      const CMatrix& a = m.site(0).a0;
      if (!is_square(a)) throw Error(ErrorCode::kShapeMismatch, "full-bit sites must be square");
      for (int j = 0; j < p; ++j) {
        rep.relation = std::max(rep.relation, pair_diff(m.site(j), SitePair{a, flip_both(a)}));
      }
      rep.consistency = hermitian_defect(a);
      break;
    }
    case SymmetryKind::kFirstSite:
    case SymmetryKind::kLastSite: {
      const SitePair& s = w.kind == SymmetryKind::kFirstSite ? m.site(0) : m.site(p - 1);
      rep.relation = (s.a1 - static_cast<double>(w.param) * s.a0).norm();
      break;
    }
  }
  return rep;
}

}  // namespace symtt
