#include "symtt/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "symtt/error.hpp"

namespace symtt {

namespace {

using namespace std::complex_literals;

Eigen::Index checked_power(int d, int p) {
  Eigen::Index n = 1;
  for (int k = 0; k < p; ++k) {
    n *= d;
    if (n > kMaxDenseDim) {
      throw Error(ErrorCode::kTooLarge, "dimension " + std::to_string(d) + "^" +
                                            std::to_string(p) + " exceeds the dense limit");
    }
  }
  return n;
}

LocalTermSpec single(int p, int site, const CMatrix& q, double coeff) {
  LocalTermSpec t;
  t.coeff = coeff;
  t.factors.assign(p, std::nullopt);
  t.factors[site] = q;
  return t;
}

LocalTermSpec pair(int p, int i, int j, const CMatrix& qi, const CMatrix& qj, double coeff) {
  LocalTermSpec t;
  t.coeff = coeff;
  t.factors.assign(p, std::nullopt);
  t.factors[i] = qi;
  t.factors[j] = qj;
  return t;
}

std::vector<std::pair<int, int>> bonds(int p, Boundary b) {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k + 1 < p; ++k) out.emplace_back(k, k + 1);
  if (b == Boundary::kPeriodic && p >= 2) out.emplace_back(0, p - 1);
  return out;
}

void add_pairs(HamiltonianSpec& s, const CMatrix& q, double coeff) {
  if (coeff == 0.0) return;
  for (auto [i, j] : bonds(s.p, s.boundary)) s.terms.push_back(pair(s.p, i, j, q, q, coeff));
}

void add_field(HamiltonianSpec& s, const CMatrix& q, double coeff) {
  if (coeff == 0.0) return;
  for (int k = 0; k < s.p; ++k) s.terms.push_back(single(s.p, k, q, coeff));
}

// cos_c * S.S + sin_c * (S.S)^2 on every bond.
void add_spin1_bonds(HamiltonianSpec& s, double bilinear, double biquadratic) {
  const std::array<CMatrix, 3> ops{spin1("x"), spin1("y"), spin1("z")};
  for (auto [i, j] : bonds(s.p, s.boundary)) {
    if (bilinear != 0.0) {
      for (const auto& sm : ops) s.terms.push_back(pair(s.p, i, j, sm, sm, bilinear));
    }
    if (biquadratic != 0.0) {
      for (const auto& sm : ops) {
        for (const auto& sn : ops) {
          const CMatrix prod = sm * sn;
          s.terms.push_back(pair(s.p, i, j, prod, prod, biquadratic));
        }
      }
    }
  }
}

void fwht(Complex* v, Eigen::Index n, Eigen::Index stride) {
  for (Eigen::Index h = 1; h < n; h <<= 1) {
    for (Eigen::Index i = 0; i < n; i += 2 * h) {
      for (Eigen::Index j = i; j < i + h; ++j) {
        const Complex a = v[j * stride];
        const Complex b = v[(j + h) * stride];
        v[j * stride] = a + b;
        v[(j + h) * stride] = a - b;
      }
    }
  }
}

}  // namespace

CMatrix pauli(std::string_view name) {
  CMatrix m(2, 2);
  if (name == "x") {
    m << 0, 1, 1, 0;
  } else if (name == "y") {
    m << 0, -1i, 1i, 0;
  } else if (name == "z") {
    m << 1, 0, 0, -1;
  } else if (name == "i") {
    m << 1, 0, 0, 1;
  } else {
    throw Error(ErrorCode::kUnknownName, "no Pauli matrix '" + std::string(name) + "'");
  }
  return m;
}

CMatrix spin1(std::string_view name) {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix m = CMatrix::Zero(3, 3);
  if (name == "x") {
    m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = s;
  } else if (name == "y") {
    m(0, 1) = m(1, 2) = -1i * s;
    m(1, 0) = m(2, 1) = 1i * s;
  } else if (name == "z") {
    m(0, 0) = 1;
    m(2, 2) = -1;
  } else if (name == "i") {
    m = CMatrix::Identity(3, 3);
  } else {
    throw Error(ErrorCode::kUnknownName, "no spin-1 operator '" + std::string(name) + "'");
  }
  return m;
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{
      "ising_zz", "heis_xx", "heis_xy", "heis_xz", "heis_xxx", "heis_xxz", "heis_xyz", "hx",
      "hy",       "hz",      "hxx",     "hyy",     "hzz",      "aklt",     "bilinear_biquadratic"};
  return names;
}

HamiltonianSpec model(std::string_view name, int p, const ModelParams& params, Boundary boundary) {
  if (p < 1) throw Error(ErrorCode::kBadParams, "p must be at least 1");
  for (double v : {params.jx, params.jy, params.jz, params.lambda, params.theta}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kBadParams, "model parameters must be finite");
  }
  HamiltonianSpec s;
  s.p = p;
  s.boundary = boundary;
  s.params = params;
  s.name = std::string(name);

  const CMatrix x = pauli("x");
  const CMatrix y = pauli("y");
  const CMatrix z = pauli("z");
  const double jx = params.jx;
  const double jy = params.jy;
  const double jz = params.jz;

  if (name == "aklt" || name == "bilinear_biquadratic") {
    s.d = 3;
    if (name == "aklt") {
      add_spin1_bonds(s, 1.0, 1.0 / 3.0);
    } else {
      add_spin1_bonds(s, std::cos(params.theta), std::sin(params.theta));
    }
    return s;
  }

  if (name == "hx" || name == "hy" || name == "hz") {
    add_field(s, pauli(name.substr(1)), 1.0);
    return s;
  }
  if (name == "hxx" || name == "hyy" || name == "hzz") {
    add_pairs(s, pauli(name.substr(2)), 1.0);
    return s;
  }

  if (name == "ising_zz") {
    add_pairs(s, z, jz);
  } else if (name == "heis_xx") {
    add_pairs(s, x, jx);
    add_pairs(s, y, jx);
  } else if (name == "heis_xy") {
    add_pairs(s, x, jx);
    add_pairs(s, y, jy);
  } else if (name == "heis_xz") {
    add_pairs(s, x, jx);
    add_pairs(s, z, jz);
  } else if (name == "heis_xxx") {
    add_pairs(s, x, jx);
    add_pairs(s, y, jx);
    add_pairs(s, z, jx);
  } else if (name == "heis_xxz") {
    add_pairs(s, x, jx);
    add_pairs(s, y, jx);
    add_pairs(s, z, jz);
  } else if (name == "heis_xyz") {
    add_pairs(s, x, jx);
    add_pairs(s, y, jy);
    add_pairs(s, z, jz);
  } else {
    throw Error(ErrorCode::kUnknownModel, "unknown model '" + std::string(name) + "'");
  }
  add_field(s, x, params.lambda);
  return s;
}

HamiltonianSpec anisotropic_xy(const RVector& a, const RVector& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw Error(ErrorCode::kSizeMismatch, "a and b must have the same nonzero length");
  }
  HamiltonianSpec s;
  s.p = static_cast<int>(a.size());
  s.name = "anisotropic_xy";
  const CMatrix x = pauli("x");
  const CMatrix y = pauli("y");
  for (int k = 0; k < s.p; ++k) {
    if (a[k] != 0.0) s.terms.push_back(single(s.p, k, x, a[k]));
    if (b[k] != 0.0) s.terms.push_back(single(s.p, k, y, b[k]));
  }
  return s;
}

HamiltonianSpec scale(HamiltonianSpec spec, double f) {
  for (auto& t : spec.terms) t.coeff *= f;
  return spec;
}

CMatrix assemble(const HamiltonianSpec& spec) {
  if (spec.p < 1 || spec.d < 1) throw Error(ErrorCode::kBadParams, "empty Hamiltonian spec");
  const Eigen::Index n = checked_power(spec.d, spec.p);
  const Eigen::Index d = spec.d;
  std::vector<Eigen::Index> weight(spec.p);
  for (int k = spec.p - 1, w = 1; k >= 0; --k, w *= spec.d) weight[k] = w;

  CMatrix h = CMatrix::Zero(n, n);
  for (const auto& term : spec.terms) {
    if (static_cast<int>(term.factors.size()) != spec.p) {
      throw Error(ErrorCode::kSizeMismatch, "term length differs from p");
    }
    std::vector<int> sites;
    for (int k = 0; k < spec.p; ++k) {
      if (!term.factors[k]) continue;
      if (term.factors[k]->rows() != d || term.factors[k]->cols() != d) {
        throw Error(ErrorCode::kSizeMismatch, "factor dimension differs from d");
      }
      sites.push_back(k);
    }
    const Eigen::Index combos = static_cast<Eigen::Index>(std::pow(d, sites.size()));
    for (Eigen::Index row = 0; row < n; ++row) {
      Eigen::Index base = row;
      std::vector<Eigen::Index> row_digit(sites.size());
      for (std::size_t s = 0; s < sites.size(); ++s) {
        row_digit[s] = (row / weight[sites[s]]) % d;
        base -= row_digit[s] * weight[sites[s]];
      }
      for (Eigen::Index c = 0; c < combos; ++c) {
        Complex v = term.coeff;
        Eigen::Index col = base;
        Eigen::Index rest = c;
        for (std::size_t s = 0; s < sites.size() && v != 0.0; ++s) {
          const Eigen::Index digit = rest % d;
          rest /= d;
          v *= (*term.factors[sites[s]])(row_digit[s], digit);
          col += digit * weight[sites[s]];
        }
        if (v != 0.0) h(row, col) += v;
      }
    }
  }
  return h;
}

RVector closed_form_hx_spectrum(int p, const RVector& r) {
  if (p < 1 || r.size() != p) throw Error(ErrorCode::kSizeMismatch, "r must have length p");
  if (p > 24) throw Error(ErrorCode::kTooLarge, "too many sign patterns");
  const Eigen::Index n = Eigen::Index{1} << p;
  std::vector<double> vals(n);
  for (Eigen::Index mask = 0; mask < n; ++mask) {
    double s = 0.0;
    for (int k = 0; k < p; ++k) s += (mask >> k) & 1 ? -r[k] : r[k];
    vals[mask] = s;
  }
  std::sort(vals.begin(), vals.end());
  return Eigen::Map<RVector>(vals.data(), n);
}

XYTransform anisotropic_xy_transform(const RVector& a, const RVector& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw Error(ErrorCode::kSizeMismatch, "a and b must have the same nonzero length");
  }
  XYTransform out;
  out.r.resize(a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a[k] == 0.0 && b[k] == 0.0) {
      throw Error(ErrorCode::kZeroSite, "site " + std::to_string(k + 1) + " has a = b = 0");
    }
    out.r[k] = std::hypot(a[k], b[k]);
    CMatrix d = CMatrix::Identity(2, 2);
    d(1, 1) = std::polar(1.0, std::atan2(b[k], a[k]));
    out.d.push_back(d);
  }
  return out;
}

CMatrix fourier_conjugate(const CMatrix& h, int p) {
  if (p < 0 || p > 30 || h.rows() != (Eigen::Index{1} << p) || h.cols() != h.rows()) {
    throw Error(ErrorCode::kSizeMismatch, "matrix size is not 2^p");
  }
  const Eigen::Index n = h.rows();
  CMatrix out = h;
  // Column-major storage: columns are contiguous, rows have stride n.
  for (Eigen::Index c = 0; c < n; ++c) fwht(out.data() + c * n, n, 1);
  for (Eigen::Index r = 0; r < n; ++r) fwht(out.data() + r, n, n);
  out /= static_cast<double>(n);
  return out;
}

StructureFlags certify_structure(const HamiltonianSpec& spec, double tol) {
  return classify(assemble(spec), tol);
}

SpectrumReport ground_state(const HamiltonianSpec& spec) {
  const CMatrix h = assemble(spec);
  if (h.rows() > kMaxEighDim) {
    throw Error(ErrorCode::kTooLarge, "ground_state supports dimensions up to 4096");
  }
  const EighResult e = eigh(h);
  SpectrumReport r;
  r.values = e.values;
  r.ground_energy = e.values[0];
  r.ground_vector = e.vectors.col(0);
  r.gap = e.values.size() > 1 ? e.values[1] - e.values[0] : 0.0;
  if (e.values.size() > 1 && r.gap >= tol::kGap) {
    const CVector jv = r.ground_vector.reverse();
    if ((jv - r.ground_vector).norm() < tol::kGap) r.parity = 1;
    else if ((jv + r.ground_vector).norm() < tol::kGap) r.parity = -1;
  }
  return r;
}

}  // namespace symtt
