#include "symtt/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symtt/error.hpp"
#include "symtt/hamiltonian.hpp"
#include "symtt/io.hpp"
#include "symtt/mps.hpp"
#include "symtt/structured.hpp"
#include "symtt/symmetry.hpp"

namespace symtt::cli {

namespace {

using json = nlohmann::ordered_json;
using Index = Eigen::Index;

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_null()) return "none";
  return v.dump();
}

class Report {
 public:
  template <typename T>
  void set(const std::string& key, const T& value) {
    data_[key] = value;
  }
  void set_list(const std::string& key, const RVector& v) {
    data_[key] = std::vector<double>(v.data(), v.data() + v.size());
  }
  void set_dims(const MPSState& m) {
    const auto d = m.dims();
    data_["dims"] = std::vector<long long>(d.begin(), d.end());
    data_["max_bond"] = static_cast<long long>(m.max_bond());
  }

  void print(std::ostream& os, bool as_json) const {
    if (as_json) {
      os << data_.dump() << '\n';
      return;
    }
    for (const auto& [key, value] : data_.items()) {
      os << key << '=';
      if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) os << (i ? "," : "") << scalar_text(value[i]);
      } else {
        os << scalar_text(value);
      }
      os << '\n';
    }
  }

 private:
  json data_ = json::object();
};

struct ModelOptions {
  std::string name;
  int p = 0;
  ModelParams params;
  std::string bc = "open";
  std::vector<double> a;
  std::vector<double> b;
};

void add_model_options(CLI::App* sc, ModelOptions& o) {
  sc->add_option("--model", o.name, "model name, or anisotropic_xy with --a/--b")->required();
  sc->add_option("--p", o.p, "number of sites");
  sc->add_option("--lambda", o.params.lambda, "transverse field");
  sc->add_option("--jx", o.params.jx);
  sc->add_option("--jy", o.params.jy);
  sc->add_option("--jz", o.params.jz);
  sc->add_option("--theta", o.params.theta, "bilinear-biquadratic angle");
  sc->add_option("--bc", o.bc, "open|periodic");
  sc->add_option("--a", o.a, "anisotropic X couplings")->delimiter(',');
  sc->add_option("--b", o.b, "anisotropic Y couplings")->delimiter(',');
}

RVector to_rvector(const std::vector<double>& v) {
  return Eigen::Map<const RVector>(v.data(), static_cast<Index>(v.size()));
}

HamiltonianSpec build_spec(const ModelOptions& o) {
  if (o.name == "anisotropic_xy") {
    if (o.a.empty() || o.a.size() != o.b.size()) {
      throw Error(ErrorCode::kBadParams, "anisotropic_xy needs --a and --b of equal length");
    }
    return anisotropic_xy(to_rvector(o.a), to_rvector(o.b));
  }
  return model(o.name, o.p, o.params, parse_boundary(o.bc));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string header_of(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  is >> tag;
  return tag;
}

// VEC1 inputs go through TT-SVD; MPS1 inputs are taken as they are.
MPSState load_state(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream is(text);
  if (header_of(text) == "VEC1") return from_vector(read_vector(is));
  return read_mps(is);
}

CVector load_any_vector(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream is(text);
  if (header_of(text) == "MPS1") return to_vector(read_mps(is));
  return read_vector(is);
}

double rel_error(const CVector& got, const CVector& want) {
  const double n = want.norm();
  return n == 0.0 ? got.norm() : (got - want).norm() / n;
}

double max_over(const std::vector<double>& v, std::size_t from, std::size_t to) {
  double m = 0.0;
  for (std::size_t i = from; i < to && i < v.size(); ++i) m = std::max(m, v[i]);
  return m;
}

void require_out(const std::string& path, const char* what) {
  if (path.empty()) throw CLI::ValidationError(std::string(what) + " requires --out");
}

void report_flags(Report& r, const StructureFlags& f) {
  r.set("real", f.real);
  r.set("symmetric", f.symmetric);
  r.set("skew_symmetric", f.skew_symmetric);
  r.set("hermitian", f.hermitian);
  r.set("persymmetric", f.persymmetric);
  r.set("skew_persymmetric", f.skew_persymmetric);
  r.set("centrosymmetric", f.centrosymmetric);
  r.set("toeplitz", f.toeplitz);
  r.set("circulant", f.circulant);
  r.set("skew_circulant", f.skew_circulant);
  r.set("diagonal", f.diagonal);
  if (f.omega) {
    r.set("omega_re", f.omega->real());
    r.set("omega_im", f.omega->imag());
  }
}

void report_relation(Report& r, const MPSState& m, const SymmetryWitness& w) {
  const RelationReport rel = verify_relation(m, w);
  r.set("relation_residual", rel.relation);
  r.set("consistency_residual", rel.consistency);
}

int parse_sign(int s) {
  if (s != 1 && s != -1) throw Error(ErrorCode::kBadParams, "--sign must be 1 or -1");
  return s;
}

unsigned parse_dof_kinds(const std::vector<std::string>& names) {
  unsigned k = 0;
  for (const auto& n : names) {
    if (n == "bitshift") {
      k |= kDofShift;
    } else if (n == "bitflip") {
      k |= kDofFlip;
    } else if (n == "reverse") {
      k |= kDofReverse;
    } else {
      throw Error(ErrorCode::kUnknownName, "unknown symmetry kind '" + n + "'");
    }
  }
  return k;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured spin-chain Hamiltonians and symmetry-adapted matrix product states"};
  app.name("symtt");
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  std::uint64_t seed = 0;
  double tol = -1.0;
  app.add_flag("--json", as_json, "print one JSON object instead of key=value lines");
  app.add_option("--seed", seed, "seed for randomized commands");

  std::function<void(Report&)> action;
  auto bind = [&](CLI::App* sc, std::function<void(Report&)> f) {
    sc->callback([&action, f] { action = f; });
  };
  auto tol_or = [&](double fallback) { return tol >= 0.0 ? tol : fallback; };
  auto add_tol = [&](CLI::App* sc) { sc->add_option("--tol", tol, "tolerance override")->check(CLI::NonNegativeNumber); };

  std::string in_path, out_path, witness_path, witness_out;

  // ---- ham ----
  auto* ham = app.add_subcommand("ham", "Hamiltonian builders")->require_subcommand(1);
  ModelOptions mo;

  auto* ham_build = ham->add_subcommand("build", "assemble a dense Hamiltonian");
  add_model_options(ham_build, mo);
  ham_build->add_option("--out", out_path, "MAT1 output");
  bind(ham_build, [&](Report& r) {
    require_out(out_path, "ham build");
    const HamiltonianSpec spec = build_spec(mo);
    const CMatrix h = assemble(spec);
    save_matrix(out_path, h);
    r.set("model", mo.name);
    r.set("p", spec.p);
    r.set("boundary", std::string(boundary_name(spec.boundary)));
    r.set("dim", static_cast<long long>(h.rows()));
    r.set("terms", static_cast<long long>(spec.terms.size()));
    r.set("frobenius_norm", h.norm());
    r.set("out", out_path);
  });

  auto* ham_certify = ham->add_subcommand("certify", "structure flags of a MAT1 matrix");
  ham_certify->add_option("input", in_path)->required();
  add_tol(ham_certify);
  bind(ham_certify, [&](Report& r) {
    const CMatrix h = load_matrix(in_path);
    r.set("rows", static_cast<long long>(h.rows()));
    r.set("cols", static_cast<long long>(h.cols()));
    report_flags(r, classify(h, tol_or(tol::kStruct)));
  });

  auto* ham_spectrum = ham->add_subcommand("spectrum", "dense spectrum of a model");
  add_model_options(ham_spectrum, mo);
  ham_spectrum->add_option("--out", out_path, "values, one per line");
  bind(ham_spectrum, [&](Report& r) {
    const SpectrumReport s = ground_state(build_spec(mo));
    r.set("model", mo.name);
    r.set("dim", static_cast<long long>(s.values.size()));
    r.set("ground_energy", s.ground_energy);
    r.set("gap", s.gap);
    if (out_path.empty()) {
      r.set_list("values", s.values);
    } else {
      std::ofstream f(out_path);
      if (!f) throw Error(ErrorCode::kParseError, "cannot write '" + out_path + "'");
      for (double v : s.values) f << format_double(v) << '\n';
      r.set("out", out_path);
    }
  });

  auto* ham_ground = ham->add_subcommand("ground", "ground state and its parity");
  add_model_options(ham_ground, mo);
  ham_ground->add_option("--out", out_path, "VEC1 output");
  bind(ham_ground, [&](Report& r) {
    const SpectrumReport s = ground_state(build_spec(mo));
    r.set("model", mo.name);
    r.set("ground_energy", s.ground_energy);
    r.set("gap", s.gap);
    if (s.parity) {
      r.set("parity", *s.parity);
    } else {
      r.set("parity", nullptr);
    }
    if (!out_path.empty()) {
      save_vector(out_path, s.ground_vector);
      r.set("out", out_path);
    }
  });

  // ---- mps ----
  auto* mps = app.add_subcommand("mps", "matrix product states")->require_subcommand(1);

  auto* mps_from = mps->add_subcommand("from-vector", "TT-SVD of a VEC1 vector");
  mps_from->add_option("input", in_path)->required();
  mps_from->add_option("--out", out_path, "MPS1 output");
  add_tol(mps_from);
  bind(mps_from, [&](Report& r) {
    const CVector x = load_vector(in_path);
    const MPSState m = from_vector(x, tol_or(0.0));
    r.set("p", m.p());
    r.set_dims(m);
    r.set("reconstruction_error", rel_error(to_vector(m), x));
    if (!out_path.empty()) {
      save_mps(out_path, m);
      r.set("out", out_path);
    }
  });

  auto* mps_to = mps->add_subcommand("to-vector", "contract an MPS1 chain");
  mps_to->add_option("input", in_path)->required();
  mps_to->add_option("--out", out_path, "VEC1 output");
  bind(mps_to, [&](Report& r) {
    require_out(out_path, "mps to-vector");
    const MPSState m = load_mps(in_path);
    const CVector x = to_vector(m);
    save_vector(out_path, x);
    r.set("p", m.p());
    r.set("norm", x.norm());
    r.set("out", out_path);
  });

  std::string bits;
  auto* mps_eval = mps->add_subcommand("eval", "one component of an MPS1 chain");
  mps_eval->add_option("input", in_path)->required();
  mps_eval->add_option("--bits", bits, "bit string i_1..i_p")->required();
  bind(mps_eval, [&](Report& r) {
    const MPSState m = load_mps(in_path);
    if (static_cast<int>(bits.size()) != m.p() || bits.find_first_not_of("01") != std::string::npos) {
      throw Error(ErrorCode::kBadParams, "--bits must have p characters from {0,1}");
    }
    std::vector<int> b;
    for (char c : bits) b.push_back(c - '0');
    const Complex z = eval_component(m, b);
    r.set("bits", bits);
    r.set("re", z.real());
    r.set("im", z.imag());
  });

  std::string form = "left";
  auto* mps_norm = mps->add_subcommand("normalize", "bring a chain into a gauge");
  mps_norm->add_option("input", in_path)->required();
  mps_norm->add_option("--form", form)->check(CLI::IsMember({"left", "right", "vidal", "strong"}));
  mps_norm->add_option("--out", out_path, "MPS1 output");
  bind(mps_norm, [&](Report& r) {
    const MPSState m = load_state(in_path);
    CVector x = to_vector(m);
    const std::size_t p = static_cast<std::size_t>(m.p());
    std::optional<MPSState> res;
    if (form == "left" || form == "right") {
      const bool left = form == "left";
      res = two_site_sweep(m, left ? Side::kLeft : Side::kRight);
      const GaugeReport g = check_gauge(*res);
      r.set("max_residual", left ? max_over(g.left, 0, p - 1) : max_over(g.right, 1, p));
    } else if (form == "vidal") {
      r.set("input_norm", x.norm());
      if (x.norm() == 0.0) throw Error(ErrorCode::kZeroVector, "cannot normalize the zero vector");
      x /= x.norm();
      const VidalForm v = vidal_from_vector(x);
      const GaugeReport g = check_gauge(v);
      r.set("max_vidal_left", g.max_vidal_left());
      r.set("max_vidal_right", g.max_vidal_right());
      for (std::size_t j = 0; j < v.lambdas.size(); ++j) r.set_list("lambda_" + std::to_string(j + 1), v.lambdas[j]);
      res = vidal_to_a(v, Side::kLeft);
    } else {
      if (m.boundary() != Boundary::kOpen) {
        throw Error(ErrorCode::kBadParams, "strong normalization needs an open chain");
      }
      res = strong_normalize(two_site_sweep(m, Side::kLeft));
      const GaugeReport g = check_gauge(*res);
      r.set("max_residual", max_over(g.strong, 0, p - 1));
    }
    r.set("form", form);
    r.set_dims(*res);
    r.set("vector_error", rel_error(to_vector(*res), x));
    if (!out_path.empty()) {
      save_mps(out_path, *res);
      r.set("out", out_path);
    }
  });

  long long dmax = 0;
  auto* mps_trunc = mps->add_subcommand("truncate", "SVD truncation of every bond");
  mps_trunc->add_option("input", in_path)->required();
  mps_trunc->add_option("--dmax", dmax, "bond cap, 0 for none");
  mps_trunc->add_option("--out", out_path, "MPS1 output");
  add_tol(mps_trunc);
  bind(mps_trunc, [&](Report& r) {
    const MPSState m = load_state(in_path);
    const TruncateResult t = truncate(m, dmax, tol_or(0.0));
    r.set_dims(t.state);
    r.set("discarded_weight", t.discarded_weight);
    r.set("vector_error", rel_error(to_vector(t.state), to_vector(m)));
    if (!out_path.empty()) {
      save_mps(out_path, t.state);
      r.set("out", out_path);
    }
  });

  std::string gauge = "all";
  auto* mps_check = mps->add_subcommand("check", "gauge residuals");
  mps_check->add_option("input", in_path)->required();
  mps_check->add_option("--gauge", gauge)->check(CLI::IsMember({"left", "right", "strong", "all"}));
  bind(mps_check, [&](Report& r) {
    const MPSState m = load_mps(in_path);
    const GaugeReport g = check_gauge(m);
    const std::size_t p = static_cast<std::size_t>(m.p());
    // The carrier site (last for left-type gauges, first for right) is excluded.
    if (gauge == "left" || gauge == "all") {
      r.set("residuals_left", g.left);
      r.set("max_left", max_over(g.left, 0, p - 1));
    }
    if (gauge == "right" || gauge == "all") {
      r.set("residuals_right", g.right);
      r.set("max_right", max_over(g.right, 1, p));
    }
    if (gauge == "strong" || gauge == "all") {
      r.set("residuals_strong", g.strong);
      r.set("max_strong", max_over(g.strong, 0, p - 1));
    }
  });

  int rp = 0;
  long long bond = 2;
  std::string bc = "open";
  auto* mps_random = mps->add_subcommand("random", "seeded random chain");
  mps_random->add_option("--p", rp)->required();
  mps_random->add_option("--bond", bond, "bond dimension");
  mps_random->add_option("--bc", bc, "open|periodic");
  mps_random->add_option("--out", out_path, "MPS1 output");
  bind(mps_random, [&](Report& r) {
    require_out(out_path, "mps random");
    if (rp < 1 || bond < 1) throw Error(ErrorCode::kBadParams, "--p and --bond must be positive");
    const Boundary b = parse_boundary(bc);
    std::vector<Index> dims(rp + 1, bond);
    if (b == Boundary::kOpen) dims.front() = dims.back() = 1;
    std::mt19937_64 rng(seed);
    const MPSState m = random_mps(b, dims, rng);
    save_mps(out_path, m);
    r.set("p", rp);
    r.set_dims(m);
    r.set("seed", seed);
    r.set("out", out_path);
  });

  // ---- sym ----
  auto* sym = app.add_subcommand("sym", "symmetries of vectors and chains")->require_subcommand(1);

  auto* sym_detect = sym->add_subcommand("detect", "symmetries of a VEC1 or MPS1 input");
  sym_detect->add_option("input", in_path)->required();
  add_tol(sym_detect);
  bind(sym_detect, [&](Report& r) {
    const CVector x = load_any_vector(in_path);
    std::vector<std::string> names;
    for (auto s : detect_vector_symmetries(x, tol_or(tol::kSymmetry))) names.emplace_back(vector_symmetry_name(s));
    r.set("p", bits_for_length(x.size()));
    r.set("symmetries", names);
    r.set("bitflip_plus_defect", bitflip_defect(x, 1));
    r.set("bitflip_minus_defect", bitflip_defect(x, -1));
    r.set("shift_defect", shift_defect(x));
    r.set("reverse_defect", reverse_defect(x));
  });

  std::string kind;
  int sign = 1;
  int block = 1;
  int sp = 0;
  bool symmetrize = false;
  auto* sym_construct = sym->add_subcommand("construct", "symmetry-adapted chain with witness");
  sym_construct->add_option("input", in_path, "VEC1/MPS1, or MAT1 for fullbit")->required();
  sym_construct->add_option("--kind", kind)->required()->check(
      CLI::IsMember({"bitshift", "reverse", "bitflip", "fullbit", "firstsite", "lastsite"}));
  sym_construct->add_option("--sign", sign, "+1 or -1");
  sym_construct->add_option("--block", block, "block length for bitshift");
  sym_construct->add_option("--p", sp, "chain length for fullbit");
  sym_construct->add_flag("--symmetrize", symmetrize, "project the input onto the symmetry first");
  sym_construct->add_option("--out", out_path, "MPS1 output");
  sym_construct->add_option("--witness-out", witness_out, "WIT1 output");
  add_tol(sym_construct);
  bind(sym_construct, [&](Report& r) {
    const double t = tol_or(tol::kSymmetry);
    std::optional<MPSState> res;
    SymmetryWitness w;
    CVector want;
    if (kind == "fullbit") {
      const CMatrix a = load_matrix(in_path);
      res = fullbit_state(a, sp);
      w.kind = SymmetryKind::kFullBit;
    } else if (kind == "firstsite" || kind == "lastsite") {
      const int s = parse_sign(sign);
      const CVector b = load_any_vector(in_path);
      const bool first = kind == "firstsite";
      res = first ? firstsite_construct(b, s) : lastsite_construct(b, s);
      w.kind = first ? SymmetryKind::kFirstSite : SymmetryKind::kLastSite;
      w.param = s;
      want.resize(2 * b.size());
      if (first) {
        want << b, static_cast<double>(s) * b;
      } else {
        for (Index i = 0; i < b.size(); ++i) {
          want[2 * i] = b[i];
          want[2 * i + 1] = static_cast<double>(s) * b[i];
        }
      }
    } else {
      MPSState m = load_state(in_path);
      if (symmetrize) {
        CVector x = to_vector(m);
        if (kind == "bitshift") x = symmetrize_shift(x, block);
        if (kind == "reverse") x = symmetrize_reverse(x);
        if (kind == "bitflip") x = symmetrize_bitflip(x, parse_sign(sign));
        m = from_vector(x);
      }
      want = to_vector(m);
      r.set("input_max_bond", static_cast<long long>(m.max_bond()));
      if (kind == "bitshift") {
        res = ti_construct(m, block, t);
        w.kind = SymmetryKind::kBitShift;
        w.param = block;
      } else {
        WitnessedState ws =
            kind == "reverse" ? reverse_construct(m, t) : bitflip_construct(m, parse_sign(sign), t);
        res = std::move(ws.state);
        w = std::move(ws.witness);
      }
    }
    r.set("kind", kind);
    r.set("p", res->p());
    r.set("boundary", std::string(boundary_name(res->boundary())));
    r.set_dims(*res);
    if (want.size() > 0) r.set("vector_error", rel_error(to_vector(*res), want));
    report_relation(r, *res, w);
    if (!out_path.empty()) {
      save_mps(out_path, *res);
      r.set("out", out_path);
    }
    if (!witness_out.empty()) {
      save_witness(witness_out, w);
      r.set("witness_out", witness_out);
    }
  });

  auto* sym_nf = sym->add_subcommand("normal-form", "symmetry normal forms");
  sym_nf->add_option("input", in_path)->required();
  sym_nf->add_option("--kind", kind)->required()->check(CLI::IsMember({"bitshift", "reverse", "bitflip", "fullbit"}));
  sym_nf->add_option("--witness", witness_path, "WIT1 input");
  sym_nf->add_option("--p", sp, "chain length for fullbit");
  sym_nf->add_option("--out", out_path, "MPS1 output");
  sym_nf->add_option("--witness-out", witness_out, "WIT1 output");
  add_tol(sym_nf);
  bind(sym_nf, [&](Report& r) {
    const double t = tol_or(tol::kSymmetry);
    std::optional<MPSState> res;
    std::optional<SymmetryWitness> w;
    CVector want;
    if (kind == "fullbit") {
      const CMatrix a = load_matrix(in_path);
      const auto [l, b] = fullbit_normal_form(a);
      res = ti_state(l, b, sp);
      want = to_vector(fullbit_state(a, sp));
      r.set("b_hermitian_defect", hermitian_defect(b));
    } else if (kind == "bitshift") {
      const MPSState m = load_mps(in_path);
      RelationReport rel = verify_relation(m, SymmetryWitness{SymmetryKind::kBitShift, 1, {}});
      if (rel.relation > t || m.boundary() != Boundary::kPeriodic) {
        throw Error(ErrorCode::kNotShiftInvariant, "input is not a site-independent periodic chain");
      }
      const auto [a0, a1] = ti_normal_form(m.site(0).a0, m.site(0).a1);
      res = ti_state(a0, a1, m.p());
      want = to_vector(m);
    } else if (kind == "reverse") {
      ReverseNormalForm nf;
      if (!witness_path.empty()) {
        const MPSState m = load_mps(in_path);
        want = to_vector(m);
        nf = reverse_normal_form(WitnessedState{m, load_witness(witness_path)});
      } else {
        want = load_any_vector(in_path);
        nf = reverse_normal_form(want, t);
      }
      res = to_mps(nf);
      r.set_list("sigma", nf.sigma);
      r.set_list("lambda", nf.lambda);
      r.set("unitarity_residual", unitarity_residual(nf));
    } else {
      if (witness_path.empty()) throw CLI::ValidationError("bitflip normal form requires --witness");
      const MPSState m = load_mps(in_path);
      want = to_vector(m);
      WitnessedState ws = bitflip_normal_form(m, load_witness(witness_path), t);
      res = std::move(ws.state);
      w = std::move(ws.witness);
      report_relation(r, *res, *w);
    }
    r.set("kind", kind);
    r.set("p", res->p());
    r.set_dims(*res);
    r.set("vector_error", rel_error(to_vector(*res), want));
    if (!out_path.empty()) {
      save_mps(out_path, *res);
      r.set("out", out_path);
    }
    if (w && !witness_out.empty()) {
      save_witness(witness_out, *w);
      r.set("witness_out", witness_out);
    }
  });

  auto* sym_verify = sym->add_subcommand("verify", "residuals of a symmetry relation");
  sym_verify->add_option("input", in_path)->required();
  sym_verify->add_option("--witness", witness_path, "WIT1 input");
  sym_verify->add_option("--kind", kind, "bitshift|fullbit|firstsite|lastsite when no witness file");
  sym_verify->add_option("--sign", sign);
  sym_verify->add_option("--block", block);
  add_tol(sym_verify);
  bind(sym_verify, [&](Report& r) {
    const MPSState m = load_mps(in_path);
    SymmetryWitness w;
    if (!witness_path.empty()) {
      w = load_witness(witness_path);
    } else {
      if (kind.empty()) throw CLI::ValidationError("sym verify needs --witness or --kind");
      w.kind = parse_kind(kind);
      w.param = w.kind == SymmetryKind::kBitShift ? block : parse_sign(sign);
      if (w.kind == SymmetryKind::kReverse || w.kind == SymmetryKind::kBitFlip) {
        throw CLI::ValidationError("reverse and bitflip need --witness");
      }
    }
    const RelationReport rel = verify_relation(m, w);
    r.set("kind", std::string(kind_name(w.kind)));
    r.set("relation_residual", rel.relation);
    r.set("consistency_residual", rel.consistency);
    r.set("holds", rel.max() <= tol_or(tol::kSymmetry));
  });

  auto* sym_orbits = sym->add_subcommand("orbits", "index orbits of a bit string");
  sym_orbits->add_option("--bits", bits)->required();
  bind(sym_orbits, [&](Report& r) {
    const OrbitReport o = orbits(bits);
    r.set("base", o.base);
    r.set("shift_orbit_size", o.shift_orbit.size());
    r.set("shift_orbit", std::vector<std::string>(o.shift_orbit.begin(), o.shift_orbit.end()));
    r.set("flip_orbit", std::vector<std::string>(o.flip_orbit.begin(), o.flip_orbit.end()));
    r.set("reverse_orbit", std::vector<std::string>(o.reverse_orbit.begin(), o.reverse_orbit.end()));
  });

  std::vector<std::string> kinds{"bitshift", "bitflip", "reverse"};
  auto* sym_dof = sym->add_subcommand("dof", "distinct vector entries under symmetry groups");
  sym_dof->add_option("--p", sp)->required();
  sym_dof->add_option("--kinds", kinds, "comma-separated subset of bitshift,bitflip,reverse")->delimiter(',');
  bind(sym_dof, [&](Report& r) {
    const DofReport d = dof_count(sp, parse_dof_kinds(kinds));
    r.set("p", d.p);
    r.set("total", std::uint64_t{1} << sp);
    for (std::size_t i = 0; i < d.counts.size(); ++i) {
      r.set("count_" + d.counts[i].first, d.counts[i].second);
      r.set("reduction_" + d.counts[i].first, d.reduction_factors[i]);
    }
  });

  // ---- struct ----
  auto* st = app.add_subcommand("struct", "structured matrices")->require_subcommand(1);

  auto* st_classify = st->add_subcommand("classify", "structure flags of a MAT1 matrix");
  st_classify->add_option("input", in_path)->required();
  add_tol(st_classify);
  bind(st_classify, [&](Report& r) { report_flags(r, classify(load_matrix(in_path), tol_or(tol::kStruct))); });

  std::string out_p, out_s;
  auto* st_split = st->add_subcommand("split", "persymmetric / skew-persymmetric split");
  st_split->add_option("input", in_path)->required();
  st_split->add_option("--out-p", out_p, "MAT1 persymmetric part");
  st_split->add_option("--out-s", out_s, "MAT1 skew-persymmetric part");
  add_tol(st_split);
  bind(st_split, [&](Report& r) {
    const CMatrix a = load_matrix(in_path);
    const auto [pp, ss] = persym_split(a, tol_or(tol::kStruct));
    r.set("persym_norm", pp.norm());
    r.set("skew_persym_norm", ss.norm());
    r.set("split_error", (pp + ss - a).norm());
    if (!out_p.empty()) save_matrix(out_p, pp);
    if (!out_s.empty()) save_matrix(out_s, ss);
  });

  std::string out_plus, out_minus;
  auto* st_block = st->add_subcommand("blockdiag", "block diagonalize a symmetric persymmetric matrix");
  st_block->add_option("input", in_path)->required();
  st_block->add_option("--out-plus", out_plus, "MAT1 B + JC");
  st_block->add_option("--out-minus", out_minus, "MAT1 B - JC");
  add_tol(st_block);
  bind(st_block, [&](Report& r) {
    const CMatrix a = load_matrix(in_path);
    const BlockPair b = block_diagonalize(a, tol_or(tol::kStruct));
    const Index m = b.b_plus.rows();
    const CMatrix t = b.q * a * b.q.transpose();
    const double off = std::hypot(t.topRightCorner(m, m).norm(), t.bottomLeftCorner(m, m).norm());
    r.set("half_size", static_cast<long long>(m));
    r.set("off_block_norm", off);
    r.set("relative_off_block", a.norm() == 0.0 ? 0.0 : off / a.norm());
    if (!out_plus.empty()) save_matrix(out_plus, b.b_plus);
    if (!out_minus.empty()) save_matrix(out_minus, b.b_minus);
  });

  auto* st_circ = st->add_subcommand("circulant-eig", "eigenvalues of a circulant");
  st_circ->add_option("input", in_path, "MAT1 first row (1 x n) or full circulant")->required();
  bind(st_circ, [&](Report& r) {
    const CMatrix a = load_matrix(in_path);
    CVector row;
    if (a.rows() == 1 || a.cols() == 1) {
      row = a.reshaped();
    } else {
      if (!classify(a).circulant) throw Error(ErrorCode::kNotOmegaCirculant, "matrix is not circulant");
      row = a.row(0).transpose();
    }
    const CVector ev = circulant_eigenvalues(row);
    r.set("n", static_cast<long long>(row.size()));
    r.set_list("eig_re", ev.real());
    r.set_list("eig_im", ev.imag());
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    Report report;
    action(report);
    report.print(out, as_json);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::ValidationError& e) {
    err << "usage: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace symtt::cli
