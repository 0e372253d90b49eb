#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ffapprox/errors.hpp"
#include "ffapprox/fixtures.hpp"
#include "ffapprox/json_io.hpp"

using namespace ffapprox;
using io::json;

namespace {

const std::string kData = FFAPPROX_DATA_DIR;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = ffapprox::cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string p = ::testing::TempDir() + name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Json, FieldRoundTrip) {
  FieldPtr f = Field::make(FieldSpec{2, 3, {1, 1, 0, 1}});
  FieldPtr g = io::field_from_json(io::field_to_json(*f));
  EXPECT_TRUE(g->same_as(*f));
  EXPECT_EQ(io::fq_from_json(*f, io::fq_to_json(*f, Fq{5}), "x"), Fq{5});
}

TEST(Json, MatrixRoundTrip) {
  FieldPtr f = Field::prime(3);
  fixtures::Rng rng(61);
  LaurentMatrix A(f, 2, 2);
  A.at(0, 0) = Laurent::exact(fixtures::random_ratfunc(f, 3, rng));
  A.at(0, 1) = fixtures::random_series(f, 20, rng);
  A.at(1, 0) = Laurent::zero(f);
  A.at(1, 1) = Laurent::from_poly(fixtures::random_poly(f, 3, rng));
  LaurentMatrix B = io::matrix_from_json(io::matrix_to_json(A));
  ASSERT_EQ(B.rows(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(B.at(i, j).is_exact(), A.at(i, j).is_exact());
      EXPECT_EQ(B.at(i, j).known_bound(), A.at(i, j).known_bound());
      const std::int64_t upto = std::min<std::int64_t>(A.at(i, j).known_bound(), 30);
      EXPECT_TRUE(B.at(i, j).agrees_with(A.at(i, j), upto));
    }
  EXPECT_EQ(io::matrix_to_json(B), io::matrix_to_json(A));
}

TEST(Json, WeightsPolyvecLogval) {
  WeightedNormContext c({2, 1}, {3});
  WeightedNormContext d = io::weights_from_json(io::weights_to_json(c));
  EXPECT_EQ(d.r, c.r);
  EXPECT_EQ(d.s, c.s);
  FieldPtr f = Field::prime(2);
  PolyVec v{Poly::Z(f), Poly(f), Poly::one(f)};
  EXPECT_EQ(io::polyvec_from_json(f, io::polyvec_to_json(v), "v"), v);
  for (LogVal x : {LogVal::neg_inf(), LogVal(Rational(-7, 3)), LogVal(4)})
    EXPECT_EQ(io::logval_from_json(io::logval_to_json(x), "x"), x);
  EXPECT_THROW(io::weights_from_json(json{{"r", {1, 1}}, {"s", {1}}}), InputError);
}

TEST(Json, MalformedTextHasPosition) {
  try {
    io::parse_json_text("{\"a\": [1, 2,,]}", "inline");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("inline:1:"), std::string::npos);
  }
  EXPECT_THROW(io::matrix_from_json(json{{"m", 1}}), InputError);
}

TEST(Json, DataFilesLoad) {
  for (const char* m : {"diag_Z.json", "ratfunc.json", "mixed_1x2.json", "gf4_poly.json"})
    EXPECT_NO_THROW(io::matrix_from_json(io::load_json_file(kData + "/" + m))) << m;
}

TEST(Cli, MinimaExample) {
  CliRun r = run_cli({"minima", "--matrix", kData + "/diag_Z.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["lambda_logs"], json({"-1", "1"}));
  EXPECT_EQ(j["covol_log"], "-2");
  EXPECT_EQ(j["product_check"], "ok");
}

TEST(Cli, ClassifyExample) {
  CliRun r = run_cli({"classify", "--matrix", kData + "/ratfunc.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["verdict"], "SINGULAR_CERTIFIED");
}

TEST(Cli, BestApproxLinesParse) {
  CliRun r = run_cli({"bestapprox", "--matrix", "fixture:alpha_quad", "--horizon", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int steps = 0;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    if (j.contains("i")) {
      ++steps;
      EXPECT_EQ(j["Ylog"], std::to_string(steps - 1));
    }
  }
  EXPECT_EQ(steps, 6);
}

TEST(Cli, ConfigFile) {
  CliRun r = run_cli({"--config", kData + "/example.conf", "minima", "--matrix", kData + "/diag_Z.json"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, ExitCodes) {
  // 1: malformed input
  const std::string bad = temp_file("bad.json", "{\"field\": {\"p\": 2}, \"m\": 1,, }");
  CliRun a = run_cli({"minima", "--matrix", bad});
  EXPECT_EQ(a.code, 1);
  EXPECT_NE(a.err.find(":1:"), std::string::npos) << a.err;
  EXPECT_EQ(run_cli({"minima"}).code, 1);
  EXPECT_EQ(run_cli({"nosuchcommand"}).code, 1);
  // 2: precondition (y = 1 is not a solution at eps/Y)
  CliRun b = run_cli({"transfer", "--matrix", "fixture:alpha_quad", "--y", kData + "/y_one.json", "--eps-log", "-1",
               "--Y-log", "1"});
  EXPECT_EQ(b.code, 2) << b.err;
  // 3: budget
  CliRun c = run_cli({"--max-unknowns", "3", "bestapprox", "--matrix", "fixture:alpha_quad", "--horizon", "10"});
  EXPECT_EQ(c.code, 3) << c.err;
  // 4: precision
  CliRun d = run_cli({"--precision", "10", "bestapprox", "--matrix", "fixture:alpha_quad", "--horizon", "30"});
  EXPECT_EQ(d.code, 4) << d.err;
  EXPECT_TRUE(d.out.empty() || d.out.find("error") == std::string::npos);
}

TEST(Cli, RepeatedRunsIdentical) {
  std::vector<std::string> args{"--workers", "3", "orbit", "--matrix", "fixture:liouville", "--steps", "40"};
  CliRun a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> one = args;
  one[1] = "1";
  EXPECT_EQ(run_cli(one).out, a.out);
}

TEST(Cli, SelftestSmall) {
  std::ostringstream o;
  EXPECT_TRUE(ffapprox::cli::selftest({7, 2, 1}, o));
  EXPECT_NE(o.str().find("result: PASS"), std::string::npos);
}
