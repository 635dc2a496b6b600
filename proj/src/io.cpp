#include "symtt/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "symtt/error.hpp"

namespace symtt {

namespace {

using Index = Eigen::Index;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

void expect(std::istream& is, const std::string& tag) {
  std::string got;
  if (!(is >> got) || got != tag) fail("expected '" + tag + "', got '" + got + "'");
}

template <typename T>
T read_value(std::istream& is, const char* what) {
  T v{};
  if (!(is >> v)) fail(std::string("cannot read ") + what);
  return v;
}

Index read_size(std::istream& is, const char* what) {
  const long long v = read_value<long long>(is, what);
  if (v < 0) fail(std::string("negative ") + what);
  return static_cast<Index>(v);
}

void write_entry(std::ostream& os, Complex z) {
  os << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
}

Complex read_entry(std::istream& is) {
  const double re = read_value<double>(is, "real part");
  const double im = read_value<double>(is, "imaginary part");
  return {re, im};
}

void write_block(std::ostream& os, const char* tag, const CMatrix& a) {
  os << tag << ' ' << a.rows() << ' ' << a.cols() << '\n';
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) write_entry(os, a(i, j));
  }
}

CMatrix read_block(std::istream& is, const char* tag) {
  expect(is, tag);
  const Index rows = read_size(is, "row count");
  const Index cols = read_size(is, "column count");
  CMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = read_entry(is);
  }
  return a;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& os, const CMatrix& a) { write_block(os, "MAT1", a); }

CMatrix read_matrix(std::istream& is) { return read_block(is, "MAT1"); }

void write_vector(std::ostream& os, const CVector& x) {
  os << "VEC1 " << bits_for_length(x.size()) << '\n';
  for (Index i = 0; i < x.size(); ++i) write_entry(os, x[i]);
}

CVector read_vector(std::istream& is) {
  expect(is, "VEC1");
  const Index p = read_size(is, "p");
  if (p > kMaxVectorBits) fail("vector too long");
  CVector x(Index{1} << p);
  for (Index i = 0; i < x.size(); ++i) x[i] = read_entry(is);
  return x;
}

void write_mps(std::ostream& os, const MPSState& m) {
  os << "MPS1 " << m.p() << ' ' << boundary_name(m.boundary()) << '\n' << "DIMS";
  for (Index d : m.dims()) os << ' ' << d;
  os << '\n';
  for (int j = 0; j < m.p(); ++j) {
    os << "SITE " << j + 1 << '\n';
    write_block(os, "A0", m.site(j).a0);
    write_block(os, "A1", m.site(j).a1);
  }
}

MPSState read_mps(std::istream& is) {
  expect(is, "MPS1");
  const Index p = read_size(is, "p");
  const std::string bc = read_value<std::string>(is, "boundary");
  Boundary boundary;
  try {
    boundary = parse_boundary(bc);
  } catch (const Error&) {
    fail("unknown boundary '" + bc + "'");
  }
  expect(is, "DIMS");
  std::vector<Index> dims(p + 1);
  for (auto& d : dims) d = read_size(is, "bond dimension");
  std::vector<SitePair> sites;
  for (Index j = 0; j < p; ++j) {
    expect(is, "SITE");
    if (read_size(is, "site index") != j + 1) fail("sites out of order");
    SitePair s{read_block(is, "A0"), read_block(is, "A1")};
    if (s.a0.rows() != dims[j] || s.a0.cols() != dims[j + 1]) fail("site shape differs from DIMS");
    sites.push_back(std::move(s));
  }
  return MPSState(boundary, std::move(sites));
}

void write_witness(std::ostream& os, const SymmetryWitness& w) {
  const auto kind = kind_name(w.kind);
  os << "WIT1 " << kind << ' ' << w.param << ' ' << w.mats.size() << '\n';
  for (std::size_t j = 0; j < w.mats.size(); ++j) {
    os << "WIT " << kind << ' ' << j + 1 << '\n';
    write_block(os, "MAT", w.mats[j]);
  }
}

SymmetryWitness read_witness(std::istream& is) {
  expect(is, "WIT1");
  SymmetryWitness w;
  const std::string kind = read_value<std::string>(is, "kind");
  try {
    w.kind = parse_kind(kind);
  } catch (const Error&) {
    fail("unknown witness kind '" + kind + "'");
  }
  w.param = read_value<int>(is, "param");
  const Index count = read_size(is, "count");
  for (Index j = 0; j < count; ++j) {
    expect(is, "WIT");
    if (read_value<std::string>(is, "kind") != kind) fail("witness kind changes mid-file");
    if (read_size(is, "witness index") != j + 1) fail("witnesses out of order");
    w.mats.push_back(read_block(is, "MAT"));
  }
  return w;
}

CMatrix load_matrix(const std::string& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

CVector load_vector(const std::string& path) {
  auto in = open_in(path);
  return read_vector(in);
}

MPSState load_mps(const std::string& path) {
  auto in = open_in(path);
  return read_mps(in);
}

SymmetryWitness load_witness(const std::string& path) {
  auto in = open_in(path);
  return read_witness(in);
}

void save_matrix(const std::string& path, const CMatrix& a) {
  auto out = open_out(path);
  write_matrix(out, a);
}

void save_vector(const std::string& path, const CVector& x) {
  auto out = open_out(path);
  write_vector(out, x);
}

void save_mps(const std::string& path, const MPSState& m) {
  auto out = open_out(path);
  write_mps(out, m);
}

void save_witness(const std::string& path, const SymmetryWitness& w) {
  auto out = open_out(path);
  write_witness(out, w);
}

}  // namespace symtt
