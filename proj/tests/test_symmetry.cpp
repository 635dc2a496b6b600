#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "symtt/error.hpp"
#include "symtt/hamiltonian.hpp"
#include "symtt/symmetry.hpp"
#include "test_oracles.hpp"

using namespace symtt;

namespace {

CVector ghz(int p, double sign = 1.0) {
  CVector x = CVector::Zero(Eigen::Index{1} << p);
  x[0] = 1.0;
  x[x.size() - 1] = sign;
  return x / std::sqrt(2.0);
}

bool has(const std::vector<VectorSymmetry>& v, VectorSymmetry s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

double rel(const CVector& a, const CVector& b) { return (a - b).norm() / b.norm(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIterationFailure;
}

// Brute-force x_{i_1..i_p} vs conj(x_{i_p..i_1}) check, independent of reverse_conj.
double reverse_oracle(const CVector& x, int p) {
  double worst = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(x.size()); ++i) {
    std::size_t r = 0;
    for (int k = 0; k < p; ++k) r |= ((i >> k) & 1u) << (p - 1 - k);
    worst = std::max(worst, std::abs(x[i] - std::conj(x[r])));
  }
  return worst;
}

}  // namespace

TEST(Detect, Ghz) {
  const auto s = detect_vector_symmetries(ghz(4));
  EXPECT_TRUE(has(s, VectorSymmetry::kBitFlipPlus));
  EXPECT_TRUE(has(s, VectorSymmetry::kShift));
  EXPECT_TRUE(has(s, VectorSymmetry::kReverse));
  EXPECT_FALSE(has(s, VectorSymmetry::kBitFlipMinus));
}

TEST(Detect, SkewGhz) {
  const auto s = detect_vector_symmetries(ghz(4, -1.0));
  EXPECT_TRUE(has(s, VectorSymmetry::kBitFlipMinus));
  EXPECT_FALSE(has(s, VectorSymmetry::kBitFlipPlus));
}

TEST(Detect, SymmetrizedRandom) {
  std::mt19937_64 rng(51);
  const CVector x = random_vector(32, rng);
  EXPECT_LT(bitflip_defect(symmetrize_bitflip(x, 1), 1), 1e-12);
  EXPECT_LT(bitflip_defect(symmetrize_bitflip(x, -1), -1), 1e-12);
  EXPECT_LT(shift_defect(symmetrize_shift(x)), 1e-12);
  EXPECT_LT(reverse_oracle(symmetrize_reverse(x), 5), 1e-12);
  EXPECT_TRUE(detect_vector_symmetries(x).empty());
  EXPECT_TRUE(detect_vector_symmetries(CVector::Zero(8)).empty());
}

TEST(Detect, FirstAndLastSite) {
  std::mt19937_64 rng(52);
  const CVector b = random_vector(8, rng);
  CVector x(16);
  x << b, -b;
  EXPECT_TRUE(has(detect_vector_symmetries(x), VectorSymmetry::kFirstMinus));
  CVector y(16);
  for (int i = 0; i < 8; ++i) y[2 * i] = y[2 * i + 1] = b[i];
  EXPECT_TRUE(has(detect_vector_symmetries(y), VectorSymmetry::kLastPlus));
}

TEST(ShiftBits, RotatesLeft) {
  CVector x = CVector::Zero(8);
  x[0b100] = 1.0;
  // y at 010 reads x at rotl(010) = 100.
  EXPECT_EQ(shift_bits(x)[0b010], Complex(1.0));
}

TEST(Orbits, SampleString) {
  const OrbitReport r = orbits("101001000");
  const std::set<std::string> shift{"101001000", "010010001", "100100010", "001000101", "010001010",
                                    "100010100", "000101001", "001010010", "010100100"};
  EXPECT_EQ(r.shift_orbit, shift);
  EXPECT_EQ(r.flip_orbit, (std::set<std::string>{"101001000", "010110111"}));
  EXPECT_EQ(r.reverse_orbit, (std::set<std::string>{"101001000", "000100101"}));
  EXPECT_THROW(orbits("10a"), Error);
}

TEST(Dof, Examples) {
  EXPECT_EQ(orbit_count(2, kDofShift), 3u);
  EXPECT_EQ(orbit_count(9, kDofShift), 60u);
  EXPECT_EQ(orbit_count(9, kDofFlip), 256u);
  EXPECT_EQ(code_of([] { orbit_count(25, kDofShift); }), ErrorCode::kTooLarge);
  const DofReport r = dof_count(4, kDofShift | kDofReverse);
  ASSERT_EQ(r.counts.size(), 3u);
  EXPECT_EQ(r.counts[0].first, "bitshift");
  EXPECT_EQ(r.counts[2].first, "bitshift+reverse");
}

TEST(TiConstruct, Examples) {
  const MPSState seed(Boundary::kPeriodic, std::vector<SitePair>(3, SitePair{CMatrix::Ones(1, 1), CMatrix::Ones(1, 1)}));
  EXPECT_LT(rel(to_vector(ti_construct(seed)), CVector::Ones(8)), 1e-15);

  const MPSState g = ti_construct(from_vector(ghz(4)));
  EXPECT_EQ(g.boundary(), Boundary::kPeriodic);
  EXPECT_LT(rel(to_vector(g), ghz(4)), 1e-12);
  EXPECT_LT(verify_relation(g, {SymmetryKind::kBitShift, 1, {}}).relation, 1e-15);

  std::mt19937_64 rng(53);
  const CVector x = symmetrize_shift(random_vector(32, rng));
  const MPSState m = from_vector(x);
  const MPSState t = ti_construct(m);
  EXPECT_LT(rel(to_vector(t), x), 1e-12);
  EXPECT_EQ(t.max_bond(), 5 * m.max_bond());
  EXPECT_EQ(code_of([&] { ti_construct(from_vector(random_vector(32, rng))); }), ErrorCode::kNotShiftInvariant);
}

TEST(TiConstruct, BlockShift) {
  std::mt19937_64 rng(54);
  const CVector x = symmetrize_shift(random_vector(64, rng), 2);
  ASSERT_GT(shift_defect(x, 1), 1e-3);
  const MPSState m = from_vector(x);
  const MPSState t = ti_construct(m, 2);
  EXPECT_LT(rel(to_vector(t), x), 1e-12);
  EXPECT_LT(verify_relation(t, {SymmetryKind::kBitShift, 2, {}}).relation, 1e-15);
  EXPECT_EQ(t.max_bond(), 3 * m.max_bond());
  EXPECT_THROW(ti_construct(m, 4), Error);
}

TEST(TiNormalForm, Examples) {
  const CMatrix d = diag(RVector{{2.0, -1.0}});
  const auto [t0, t1] = ti_normal_form(d, identity(2));
  std::vector<double> e{t0(0, 0).real(), t0(1, 1).real()};
  std::sort(e.begin(), e.end());
  EXPECT_EQ(e, (std::vector<double>{-1.0, 2.0}));

  const auto [x0, x1] = ti_normal_form(pauli("x"), identity(2));
  EXPECT_LT(std::abs(x0(0, 1)) + std::abs(x0(1, 0)), 1e-14);
  EXPECT_LT((x1 - identity(2)).norm(), 1e-14);

  std::mt19937_64 rng(55);
  CMatrix a = random_matrix(4, 4, rng), b = random_matrix(4, 4, rng);
  a = (a + a.adjoint()).eval();
  b = (b + b.adjoint()).eval();
  const auto [h0, h1] = ti_normal_form(a, b);
  EXPECT_LT(max_abs_imag(CMatrix(h0.diagonal())), 1e-15);
  EXPECT_LT((h0 - CMatrix(h0.diagonal().asDiagonal())).norm(), 1e-15);
  EXPECT_LT(hermitian_defect(h1), 1e-12);
  EXPECT_LT(rel(to_vector(ti_state(h0, h1, 5)), to_vector(ti_state(a, b, 5))), 1e-12);

  const CMatrix g = random_matrix(4, 4, rng), k = random_matrix(4, 4, rng);
  const auto [s0, s1] = ti_normal_form(g, k);
  EXPECT_LT(s0.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm(), 1e-12);
  EXPECT_LT(rel(to_vector(ti_state(s0, s1, 4)), to_vector(ti_state(g, k, 4))), 1e-12);
}

TEST(ReverseConstruct, Examples) {
  std::mt19937_64 rng(56);
  const CVector site{{0.6, 0.8}};
  CMatrix prod = CMatrix::Ones(1, 1);
  for (int k = 0; k < 4; ++k) prod = oracle::kron(prod, site);
  const WitnessedState ps = reverse_construct(from_vector(prod.col(0)));
  EXPECT_LT(verify_relation(ps.state, ps.witness).max(), 1e-12);

  const CVector x = symmetrize_reverse(random_vector(16, rng));
  const WitnessedState ws = reverse_construct(from_vector(x));
  EXPECT_LT(rel(to_vector(ws.state), x), 1e-12);
  EXPECT_EQ(ws.witness.mats.back().size(), 1);
  EXPECT_EQ(verify_relation(ws.state, ws.witness).max(), 0.0);

  const CVector y = symmetrize_reverse(symmetrize_shift(random_vector(16, rng)));
  const WitnessedState wp = reverse_construct(ti_construct(from_vector(y)));
  for (const auto& s : wp.witness.mats) {
    EXPECT_LT(unitarity_defect(s), 1e-15);
    EXPECT_LT(hermitian_defect(s), 1e-15);
  }
  EXPECT_EQ(verify_relation(wp.state, wp.witness).max(), 0.0);
  EXPECT_EQ(code_of([&] { reverse_construct(from_vector(random_vector(16, rng))); }), ErrorCode::kNotReverseSymmetric);
}

TEST(ReverseNormalForm, Examples) {
  CVector bell = CVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const ReverseNormalForm b = reverse_normal_form(bell);
  ASSERT_EQ(b.u.size(), 1u);
  EXPECT_LT(unitarity_residual(b), 1e-12);
  EXPECT_LT(rel(to_vector(to_mps(b)), bell), 1e-12);

  const CVector site{{0.6, 0.8}};
  CMatrix prod = CMatrix::Ones(1, 1);
  for (int k = 0; k < 4; ++k) prod = oracle::kron(prod, site);
  EXPECT_LT(rel(to_vector(to_mps(reverse_normal_form(CVector(prod.col(0))))), prod.col(0)), 1e-12);

  std::mt19937_64 rng(57);
  const CVector x = symmetrize_reverse(random_vector(8, rng));
  const ReverseNormalForm odd = reverse_normal_form(x);
  EXPECT_EQ(odd.u.size(), 2u);
  EXPECT_LT(unitarity_residual(odd), 1e-12);
  EXPECT_LT(rel(to_vector(to_mps(odd)), x), 1e-10);
  EXPECT_THROW(reverse_normal_form(random_vector(8, rng)), Error);
}

TEST(ReverseNormalForm, PeriodicWitness) {
  std::mt19937_64 rng(58);
  const CVector x = symmetrize_reverse(symmetrize_shift(random_vector(16, rng)));
  const WitnessedState ws = reverse_construct(ti_construct(from_vector(x)));
  const ReverseNormalForm nf = reverse_normal_form(ws);
  EXPECT_LT(unitarity_residual(nf), 1e-12);
  const MPSState m = to_mps(nf);
  EXPECT_EQ(m.boundary(), Boundary::kPeriodic);
  EXPECT_LT(rel(to_vector(m), x), 1e-10);
}

TEST(BitflipConstruct, Examples) {
  const WitnessedState g = bitflip_construct(from_vector(ghz(4)), 1);
  EXPECT_EQ(verify_relation(g.state, g.witness).max(), 0.0);
  EXPECT_LT(rel(to_vector(g.state), ghz(4)), 1e-12);

  std::mt19937_64 rng(59);
  const CVector x = symmetrize_bitflip(random_vector(16, rng), 1);
  const WitnessedState w = bitflip_construct(from_vector(x), 1);
  EXPECT_LT(rel(to_vector(w.state), x), 1e-12);
  for (const auto& u : w.witness.mats) EXPECT_EQ((u * u - identity(u.rows())).norm(), 0.0);

  const WitnessedState s = bitflip_construct(from_vector(ghz(4, -1.0)), -1);
  const CVector y = to_vector(s.state);
  EXPECT_LT((CVector(y.reverse()) + y).norm(), 1e-12);
  EXPECT_EQ(code_of([&] { bitflip_construct(from_vector(ghz(4)), -1); }), ErrorCode::kSymmetryMismatch);
}

TEST(BitflipNormalForm, Examples) {
  std::mt19937_64 rng(60);
  const CVector x = symmetrize_bitflip(random_vector(16, rng), -1);
  const WitnessedState w = bitflip_construct(from_vector(x), -1);
  const WitnessedState n = bitflip_normal_form(w.state, w.witness);
  EXPECT_LT(rel(to_vector(n.state), x), 1e-12);
  EXPECT_LT(verify_relation(n.state, n.witness).max(), 1e-12);
  for (std::size_t j = 1; j < n.witness.mats.size(); ++j) {
    const CMatrix& d = n.witness.mats[j];
    const Eigen::Index h = d.rows() / 2;
    EXPECT_EQ(d, diag(RVector((RVector(2 * h) << RVector::Ones(h), -RVector::Ones(h)).finished())));
  }

  // Identity witnesses leave the sites alone.
  const MPSState m = random_mps(Boundary::kPeriodic, {2, 2, 2, 2}, rng);
  std::vector<SitePair> s = m.sites();
  for (auto& site : s) site.a1 = site.a0;
  const MPSState sym(Boundary::kPeriodic, s);
  const SymmetryWitness id{SymmetryKind::kBitFlip, 1, {identity(2), identity(2), identity(2)}};
  const WitnessedState out = bitflip_normal_form(sym, id);
  for (int j = 0; j < 3; ++j) EXPECT_LT((out.state.site(j).a0 - sym.site(j).a0).norm(), 1e-15);
  for (const auto& d : out.witness.mats) EXPECT_EQ(d, identity(2));

  SymmetryWitness bad = w.witness;
  bad.mats[1] = 2.0 * identity(bad.mats[1].rows());
  EXPECT_EQ(code_of([&] { bitflip_normal_form(w.state, bad); }), ErrorCode::kWitnessViolation);
}

TEST(BitflipNormalForm, NotDiagonalizable) {
  std::mt19937_64 rng(61);
  const CMatrix u = Complex(0.0, 1.0) * identity(2);  // u^2 = -I
  const SymmetryWitness w{SymmetryKind::kBitFlip, 1, {u, u}};
  const MPSState m = random_bitflip_mps(w, Boundary::kPeriodic, {2, 2, 2}, rng);
  ASSERT_LT(verify_relation(m, w).relation, 1e-12);
  EXPECT_EQ(code_of([&] { bitflip_normal_form(m, w); }), ErrorCode::kNotDiagonalizable);
}

TEST(ExchangeAnsatz, GeneratesInvolutions) {
  const SymmetryWitness w = exchange_ansatz_witness({3, 3, 3, 3}, Boundary::kPeriodic);
  std::mt19937_64 rng(62);
  const MPSState m = random_bitflip_mps(w, Boundary::kPeriodic, {3, 3, 3, 3}, rng);
  EXPECT_LT(verify_relation(m, w).max(), 1e-12);
  EXPECT_LT(bitflip_defect(to_vector(m), 1), 1e-12);
}

TEST(Fullbit, Examples) {
  const auto [l, b] = fullbit_normal_form(identity(2));
  EXPECT_LT((l - identity(2)).norm(), 1e-15);
  EXPECT_LT((b - identity(2)).norm(), 1e-15);
  EXPECT_LT(rel(to_vector(fullbit_state(identity(2), 3)), 2.0 * CVector::Ones(8)), 1e-15);

  const auto s = detect_vector_symmetries(to_vector(fullbit_state(diag(RVector{{2.0, 1.0}}), 3)));
  EXPECT_TRUE(has(s, VectorSymmetry::kShift));
  EXPECT_TRUE(has(s, VectorSymmetry::kBitFlipPlus));
  EXPECT_TRUE(has(s, VectorSymmetry::kReverse));

  std::mt19937_64 rng(63);
  CMatrix a = random_matrix(3, 3, rng);
  a = (a + a.adjoint()).eval();
  const auto [la, ba] = fullbit_normal_form(a);
  EXPECT_LT(hermitian_defect(ba), 1e-12);
  EXPECT_LT(rel(to_vector(ti_state(la, ba, 4)), to_vector(fullbit_state(a, 4))), 1e-12);
  EXPECT_LT(verify_relation(fullbit_state(a, 4), {SymmetryKind::kFullBit, 1, {}}).max(), 1e-15);
  EXPECT_EQ(code_of([&] { fullbit_normal_form(random_matrix(2, 2, rng)); }), ErrorCode::kNotHermitian);
}

TEST(FirstLastSite, Examples) {
  CVector e0 = CVector::Zero(4);
  e0[0] = 1.0;
  const CVector x = to_vector(firstsite_construct(e0, 1));
  EXPECT_EQ(x[0], x[4]);
  EXPECT_EQ(x[0], Complex(1.0));

  std::mt19937_64 rng(64);
  const CVector b = random_vector(8, rng);
  CVector want(16);
  want << b, -b;
  const MPSState f = firstsite_construct(b, -1);
  EXPECT_LT(rel(to_vector(f), want), 1e-12);
  EXPECT_LT(verify_relation(f, {SymmetryKind::kFirstSite, -1, {}}).relation, 1e-15);

  for (int sign : {1, -1}) {
    const CVector y = to_vector(lastsite_construct(b, sign));
    for (int i = 0; i < 8; ++i) EXPECT_LT(std::abs(y[2 * i + 1] - double(sign) * y[2 * i]), 1e-12);
    EXPECT_LT((y(Eigen::seq(0, 15, 2)) - b).norm(), 1e-12 * b.norm());
  }

  const MPSState one = firstsite_construct(CVector::Constant(1, 2.0), -1);
  EXPECT_LT((to_vector(one) - CVector{{2.0, -2.0}}).norm(), 1e-15);
  EXPECT_EQ(code_of([] { firstsite_construct(CVector::Zero(4), 1); }), ErrorCode::kZeroVector);

  const MPSState pbc = random_mps(Boundary::kPeriodic, {2, 2, 2}, rng);
  const CVector pb = to_vector(pbc);
  CVector pw(8);
  pw << pb, pb;
  EXPECT_LT(rel(to_vector(firstsite_construct(pbc, 1)), pw), 1e-12);
}

TEST(VerifyRelation, Perturbation) {
  std::mt19937_64 rng(65);
  const WitnessedState w = bitflip_construct(from_vector(symmetrize_bitflip(random_vector(16, rng), 1)), 1);
  std::vector<SitePair> s = w.state.sites();
  s[1].a0 += 1e-3 * random_matrix(s[1].a0.rows(), s[1].a0.cols(), rng);
  EXPECT_GE(verify_relation(MPSState(w.state.boundary(), s), w.witness).relation, 1e-4);

  const SymmetryWitness wrong{SymmetryKind::kReverse, 1, {identity(1)}};
  EXPECT_EQ(code_of([&] { verify_relation(w.state, wrong); }), ErrorCode::kShapeMismatch);
}
