#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <string>

#include "symtt/error.hpp"
#include "symtt/hamiltonian.hpp"
#include "symtt/io.hpp"
#include "symtt/mps.hpp"
#include "symtt/structured.hpp"
#include "symtt/symmetry.hpp"

namespace py = pybind11;
using namespace symtt;

namespace {

py::dict flags_dict(const StructureFlags& f) {
  py::dict d;
  d["real"] = f.real;
  d["symmetric"] = f.symmetric;
  d["skew_symmetric"] = f.skew_symmetric;
  d["hermitian"] = f.hermitian;
  d["persymmetric"] = f.persymmetric;
  d["skew_persymmetric"] = f.skew_persymmetric;
  d["centrosymmetric"] = f.centrosymmetric;
  d["toeplitz"] = f.toeplitz;
  d["circulant"] = f.circulant;
  d["skew_circulant"] = f.skew_circulant;
  d["diagonal"] = f.diagonal;
  d["omega"] = f.omega ? py::cast(*f.omega) : py::none();
  return d;
}

HamiltonianSpec make_model(const std::string& name, int p, double lambda, double jx, double jy, double jz,
                           double theta, const std::string& bc) {
  ModelParams params;
  params.lambda = lambda;
  params.jx = jx;
  params.jy = jy;
  params.jz = jz;
  params.theta = theta;
  return model(name, p, params, parse_boundary(bc));
}

std::vector<std::pair<CMatrix, CMatrix>> site_list(const MPSState& m) {
  std::vector<std::pair<CMatrix, CMatrix>> out;
  for (const auto& s : m.sites()) out.emplace_back(s.a0, s.a1);
  return out;
}

MPSState from_sites(const std::string& bc, const std::vector<std::pair<CMatrix, CMatrix>>& sites) {
  std::vector<SitePair> s;
  for (const auto& [a0, a1] : sites) s.push_back({a0, a1});
  return MPSState(parse_boundary(bc), std::move(s));
}

SymmetryWitness witness_from(const std::string& kind, int param, const std::vector<CMatrix>& mats) {
  return {parse_kind(kind), param, mats};
}

py::tuple witness_tuple(const SymmetryWitness& w) {
  return py::make_tuple(std::string(kind_name(w.kind)), w.param, w.mats);
}

}  // namespace

PYBIND11_MODULE(_symtt, m) {
  m.doc() = "Symmetric tensor-train and spin-chain Hamiltonian toolkit";

  static py::exception<Error> error(m, "SymttError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("code") = std::string(error_name(e.code()));
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  // Hamiltonians
  m.def("model_names", &model_names);
  m.def(
      "hamiltonian",
      [](const std::string& name, int p, double lambda, double jx, double jy, double jz, double theta,
         const std::string& bc) { return assemble(make_model(name, p, lambda, jx, jy, jz, theta, bc)); },
      py::arg("name"), py::arg("p"), py::arg("lam") = 0.0, py::arg("jx") = 1.0, py::arg("jy") = 1.0,
      py::arg("jz") = 1.0, py::arg("theta") = 0.0, py::arg("bc") = "open");
  m.def(
      "anisotropic_xy", [](const RVector& a, const RVector& b) { return assemble(anisotropic_xy(a, b)); },
      py::arg("a"), py::arg("b"));
  m.def("closed_form_hx_spectrum", &closed_form_hx_spectrum, py::arg("p"), py::arg("r"));
  m.def(
      "ground_state",
      [](const std::string& name, int p, double lambda, double jx, double jy, double jz, double theta,
         const std::string& bc) {
        const SpectrumReport r = ground_state(make_model(name, p, lambda, jx, jy, jz, theta, bc));
        py::dict d;
        d["values"] = r.values;
        d["energy"] = r.ground_energy;
        d["vector"] = r.ground_vector;
        d["gap"] = r.gap;
        d["parity"] = r.parity ? py::cast(*r.parity) : py::none();
        return d;
      },
      py::arg("name"), py::arg("p"), py::arg("lam") = 0.0, py::arg("jx") = 1.0, py::arg("jy") = 1.0,
      py::arg("jz") = 1.0, py::arg("theta") = 0.0, py::arg("bc") = "open");

  // Structured matrices
  m.def("classify", [](const CMatrix& a, double tol) { return flags_dict(classify(a, tol)); }, py::arg("a"),
        py::arg("tol") = tol::kStruct);
  m.def("persym_split", [](const CMatrix& a) { return persym_split(a); }, py::arg("a"));
  m.def(
      "block_diagonalize",
      [](const CMatrix& a) {
        const BlockPair b = block_diagonalize(a);
        return py::make_tuple(b.b_plus, b.b_minus, b.q);
      },
      py::arg("a"));
  m.def("circulant_eigenvalues", &circulant_eigenvalues, py::arg("r"));
  m.def("eigh", [](const CMatrix& a) {
    const EighResult e = eigh(a);
    return py::make_tuple(e.values, e.vectors);
  });

  // Matrix product states
  py::class_<MPSState>(m, "MPS")
      .def(py::init(&from_sites), py::arg("boundary"), py::arg("sites"))
      .def_property_readonly("p", &MPSState::p)
      .def_property_readonly("boundary", [](const MPSState& s) { return std::string(boundary_name(s.boundary())); })
      .def_property_readonly("dims", &MPSState::dims)
      .def_property_readonly("max_bond", &MPSState::max_bond)
      .def_property_readonly("sites", &site_list)
      .def("to_vector", [](const MPSState& s) { return to_vector(s); })
      .def("eval", [](const MPSState& s, const std::vector<int>& bits) { return eval_component(s, bits); })
      .def("__repr__", [](const MPSState& s) {
        return "<MPS p=" + std::to_string(s.p()) + " " + std::string(boundary_name(s.boundary())) +
               " max_bond=" + std::to_string(s.max_bond()) + ">";
      });

  m.def("from_vector", &from_vector, py::arg("x"), py::arg("tol") = 0.0);
  m.def("random_mps", [](const std::string& bc, const std::vector<Eigen::Index>& dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_mps(parse_boundary(bc), dims, rng);
  }, py::arg("boundary"), py::arg("dims"), py::arg("seed") = 0);
  m.def(
      "normalize",
      [](const MPSState& s, const std::string& form) {
        if (form == "left") return two_site_sweep(s, Side::kLeft);
        if (form == "right") return two_site_sweep(s, Side::kRight);
        if (form == "strong") return strong_normalize(two_site_sweep(s, Side::kLeft));
        throw Error(ErrorCode::kBadParams, "form must be left, right or strong");
      },
      py::arg("state"), py::arg("form") = "left");
  m.def(
      "vidal",
      [](const CVector& x) {
        const VidalForm v = vidal_from_vector(x);
        std::vector<std::pair<CMatrix, CMatrix>> g;
        for (const auto& s : v.gammas) g.emplace_back(s.a0, s.a1);
        return py::make_tuple(g, v.lambdas);
      },
      py::arg("x"));
  m.def(
      "truncate",
      [](const MPSState& s, Eigen::Index d_max, double tol) {
        const TruncateResult r = truncate(s, d_max, tol);
        return py::make_tuple(r.state, r.discarded_weight);
      },
      py::arg("state"), py::arg("d_max"), py::arg("tol") = 0.0);
  m.def(
      "check_gauge",
      [](const MPSState& s) {
        const GaugeReport g = check_gauge(s);
        py::dict d;
        d["left"] = g.left;
        d["right"] = g.right;
        d["strong"] = g.strong;
        return d;
      },
      py::arg("state"));

  // Symmetries
  m.def(
      "detect_symmetries",
      [](const CVector& x, double tol) {
        std::vector<std::string> out;
        for (VectorSymmetry s : detect_vector_symmetries(x, tol)) out.emplace_back(vector_symmetry_name(s));
        return out;
      },
      py::arg("x"), py::arg("tol") = tol::kSymmetry);
  m.def("symmetrize_shift", &symmetrize_shift, py::arg("x"), py::arg("r") = 1);
  m.def("symmetrize_bitflip", &symmetrize_bitflip, py::arg("x"), py::arg("sign"));
  m.def("symmetrize_reverse", &symmetrize_reverse, py::arg("x"));
  m.def("ti_construct", &ti_construct, py::arg("state"), py::arg("r") = 1, py::arg("tol") = tol::kSymmetry);
  m.def(
      "reverse_construct",
      [](const MPSState& s) {
        const WitnessedState w = reverse_construct(s);
        return py::make_tuple(w.state, witness_tuple(w.witness));
      },
      py::arg("state"));
  m.def(
      "bitflip_construct",
      [](const MPSState& s, int sign) {
        const WitnessedState w = bitflip_construct(s, sign);
        return py::make_tuple(w.state, witness_tuple(w.witness));
      },
      py::arg("state"), py::arg("sign") = 1);
  m.def(
      "verify_relation",
      [](const MPSState& s, const std::string& kind, int param, const std::vector<CMatrix>& mats) {
        const RelationReport r = verify_relation(s, witness_from(kind, param, mats));
        return py::make_tuple(r.relation, r.consistency);
      },
      py::arg("state"), py::arg("kind"), py::arg("param") = 1, py::arg("mats") = std::vector<CMatrix>{});
  m.def(
      "reverse_normal_form",
      [](const CVector& x) {
        const ReverseNormalForm nf = reverse_normal_form(x);
        py::dict d;
        d["sigma"] = nf.sigma;
        d["lambda"] = nf.lambda;
        d["unitarity_residual"] = unitarity_residual(nf);
        d["state"] = to_mps(nf);
        return d;
      },
      py::arg("x"));
  m.def(
      "orbits",
      [](const std::string& bits) {
        const OrbitReport r = orbits(bits);
        return py::make_tuple(r.shift_orbit, r.flip_orbit, r.reverse_orbit);
      },
      py::arg("bits"));
  m.def(
      "dof_count",
      [](int p, const std::vector<std::string>& kinds) {
        unsigned mask = 0;
        for (const auto& k : kinds) {
          if (k == "bitshift") mask |= kDofShift;
          else if (k == "bitflip") mask |= kDofFlip;
          else if (k == "reverse") mask |= kDofReverse;
          else throw Error(ErrorCode::kUnknownName, "unknown symmetry '" + k + "'");
        }
        const DofReport r = dof_count(p, mask);
        py::dict d;
        for (const auto& [name, count] : r.counts) d[py::str(name)] = count;
        return d;
      },
      py::arg("p"), py::arg("kinds") = std::vector<std::string>{"bitshift", "bitflip", "reverse"});

  // Files
  m.def("load_mps", &load_mps);
  m.def("save_mps", &save_mps);
  m.def("load_vector", &load_vector);
  m.def("save_vector", &save_vector);
  m.def("load_matrix", &load_matrix);
  m.def("save_matrix", &save_matrix);
}
