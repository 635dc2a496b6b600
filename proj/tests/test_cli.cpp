#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "symtt/cli.hpp"
#include "symtt/io.hpp"

using namespace symtt;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& report, const std::string& key) {
  std::istringstream is(report);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("symtt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HamBuildThenCertify) {
  const Result b = run({"ham", "build", "--model", "ising_zz", "--p", "4", "--lambda", "1.0", "--bc", "open",
                        "--out", path("H.mat")});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(load_matrix(path("H.mat")).rows(), 16);
  const Result c = run({"ham", "certify", path("H.mat")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(value_of(c.out, "persymmetric"), "true");
  EXPECT_EQ(value_of(c.out, "symmetric"), "true");
}

TEST_F(CliTest, FromVectorThenCheckGauge) {
  std::mt19937_64 rng(3);
  save_vector(path("x.vec"), random_vector(64, rng));
  const Result f = run({"mps", "from-vector", path("x.vec"), "--tol", "0", "--out", path("x.mps")});
  ASSERT_EQ(f.code, 0) << f.err;
  const Result c = run({"mps", "check", path("x.mps"), "--gauge", "left"});
  ASSERT_EQ(c.code, 0) << c.err;
  const std::string v = value_of(c.out, "max_left");
  ASSERT_FALSE(v.empty()) << c.out;
  EXPECT_LT(std::stod(v), 1e-12);
}

TEST_F(CliTest, OrbitsOfSampleString) {
  const Result r = run({"sym", "orbits", "--bits", "101001000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "shift_orbit"),
            "000101001,001000101,001010010,010001010,010010001,010100100,100010100,100100010,101001000");
  EXPECT_EQ(value_of(r.out, "flip_orbit"), "010110111,101001000");
  EXPECT_EQ(value_of(r.out, "reverse_orbit"), "000100101,101001000");
}

TEST_F(CliTest, JsonCarriesTheSameKeys) {
  const Result r = run({"--json", "sym", "dof", "--p", "9", "--kinds", "bitshift,bitflip"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("count_bitshift").get<int>(), 60);
  EXPECT_EQ(j.at("count_bitflip").get<int>(), 256);
  EXPECT_EQ(j.at("count_bitshift+bitflip").get<int>(), 30);
  const Result plain = run({"sym", "dof", "--p", "9", "--kinds", "bitshift,bitflip"});
  EXPECT_EQ(value_of(plain.out, "count_bitshift"), "60");
}

TEST_F(CliTest, SeedDeterminism) {
  const Result a = run({"mps", "random", "--p", "4", "--bond", "3", "--seed", "42", "--out", path("a.mps")});
  const Result b = run({"mps", "random", "--p", "4", "--bond", "3", "--seed", "42", "--out", path("b.mps")});
  const Result c = run({"mps", "random", "--p", "4", "--bond", "3", "--seed", "43", "--out", path("c.mps")});
  ASSERT_EQ(a.code, 0) << a.err;
  auto slurp = [](const std::string& p) {
    std::ifstream is(p);
    return std::string(std::istreambuf_iterator<char>(is), {});
  };
  EXPECT_EQ(slurp(path("a.mps")), slurp(path("b.mps")));
  EXPECT_NE(slurp(path("a.mps")), slurp(path("c.mps")));
  const Result again = run({"mps", "random", "--p", "4", "--bond", "3", "--seed", "42", "--out", path("a.mps")});
  EXPECT_EQ(a.out, again.out);
}

TEST_F(CliTest, ConstructAndVerify) {
  std::mt19937_64 rng(5);
  save_vector(path("x.vec"), random_vector(32, rng));
  const Result c = run({"sym", "construct", path("x.vec"), "--kind", "reverse", "--symmetrize", "--out",
                        path("r.mps"), "--witness-out", path("r.wit")});
  ASSERT_EQ(c.code, 0) << c.err;
  const Result v = run({"sym", "verify", path("r.mps"), "--witness", path("r.wit")});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_LT(std::stod(value_of(v.out, "relation_residual")), 1e-12);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"ham", "build", "--model", "ising_zz", "--p", "x"}).code, 2);
  const Result unknown = run({"ham", "build", "--model", "no_such_model", "--p", "3", "--out", path("H.mat")});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_FALSE(unknown.err.empty());
  EXPECT_EQ(run({"mps", "check", path("missing.mps")}).code, 1);

  std::mt19937_64 rng(6);
  save_vector(path("y.vec"), random_vector(16, rng));
  const Result r = run({"sym", "construct", path("y.vec"), "--kind", "bitflip", "--sign", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("SymmetryMismatch"), std::string::npos) << r.err;
}
