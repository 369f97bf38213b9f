#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "json.hpp"

#include "chainwish/io.hpp"
#include "chainwish/verification.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("chainwish_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return std::string(CHAINWISH_TEST_DATA) + "/" + name; }

CliRun run(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  const std::string cmd = env + " \"" + std::string(CHAINWISH_CLI) + "\" " + args + " >\"" + out.string() +
                          "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

json run_json(const std::string& args) {
  const CliRun r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, SampleExponentialBaseCase) {
  const fs::path out = scratch() / "exp.csv";
  const CliRun r = run("sample --family q --params " + data("q_n1.json") + " -n 4000 --seed 11 -o " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  const auto rows = chainwish::read_samples(in);
  ASSERT_EQ(rows.size(), 4000u);
  std::vector<double> draws;
  for (const auto& row : rows) draws.push_back(row[0]);
  EXPECT_GT(chainwish::ks_test_gamma(draws, 1.0, 1.0), 0.01);
  const std::string text = slurp(out);
  EXPECT_NE(text.find("seed=11"), std::string::npos);
}

TEST(Cli, SampleIsDeterministic) {
  const fs::path a = scratch() / "a.csv", b = scratch() / "b.csv", c = scratch() / "c.csv";
  ASSERT_EQ(run("sample --family p --params " + data("p_n3.json") + " -n 50 --seed 3 -o " + a.string()).code, 0);
  ASSERT_EQ(run("sample --family p --params " + data("p_n3.json") + " -n 50 -o " + b.string(), "CHAINWISH_SEED=3").code, 0);
  ASSERT_EQ(run("sample --family p --params " + data("p_n3.json") + " -n 50 --seed 4 -o " + c.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a), slurp(c));
}

TEST(Cli, SampleQuadraticConstruction) {
  const CliRun r = run("sample --family q --params " + data("q_sigma.json") + " --sigma -n 5 --seed 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("quadratic"), std::string::npos);
  EXPECT_EQ(run("sample --family q --params " + data("q_n3.json") + " --sigma -n 5").code, 3);
}

TEST(Cli, DomainViolationsExitTwo) {
  CliRun r = run("sample --family q --params " + data("q_bad_shape.json") + " -n 5");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("vertex 1"), std::string::npos) << r.err;
  r = run("eval mean --family q --params " + data("q_bad_y.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("3"), std::string::npos) << r.err;
}

TEST(Cli, IoErrorsExitThree) {
  EXPECT_EQ(run("sample --family q --params /nonexistent.json -n 5").code, 3);
  EXPECT_EQ(run("eval density --family q --params " + data("q_n3.json") + " --point " + data("missing_ok.csv")).code, 3);
  EXPECT_EQ(run("eval laplace --family q --params " + data("q_n3.json") + " --point " + data("z3.json") + " --bogus").code,
            3);
}

TEST(Cli, MeanAtUnitShapeIsInverseImage) {
  const json r = run_json("eval mean --family q --params " + data("q_unit.json"));
  Eigen::Matrix3d y;
  y << 2, 0.5, 0, 0.5, 2, -0.5, 0, -0.5, 2;
  const Eigen::Matrix3d inv = y.inverse();
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r["mean"]["diag"][i].get<double>(), inv(i, i), 1e-14);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(r["mean"]["off"][i].get<double>(), inv(i, i + 1), 1e-14);
}

TEST(Cli, InverseMeanRoundTrips) {
  const json r = run_json("eval inverse-mean --family q --params " + data("q_n3.json") + " --point " + data("m3.json"));
  json params = json::parse(slurp(data("q_n3.json")));
  params["y"] = r["y"];
  const fs::path p = scratch() / "roundtrip.json";
  std::ofstream(p) << params.dump();
  const json back = run_json("eval mean --family q --params " + p.string());
  const json m = json::parse(slurp(data("m3.json")));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(back["mean"]["diag"][i].get<double>(), m["diag"][i].get<double>(), 1e-10);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(back["mean"]["off"][i].get<double>(), m["off"][i].get<double>(), 1e-10);
}

TEST(Cli, ScalarThirdMoment) {
  const json r = run_json("eval moment --family q --params " + data("q_scalar.json") + " --point " + data("points3.json"));
  const json pts = json::parse(slurp(data("points3.json")))["points"];
  Eigen::Matrix3d y;
  y << 2, 0.5, 0, 0.5, 1.5, -0.5, 0, -0.5, 2;
  std::vector<Eigen::Matrix3d> a;
  for (const auto& p : pts) {
    Eigen::Matrix3d z = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) z(i, i) = p["diag"][i].get<double>();
    for (int i = 0; i < 2; ++i) z(i, i + 1) = z(i + 1, i) = p["off"][i].get<double>();
    a.push_back(y.inverse() * z);
  }
  const double s = 1.3;
  const double closed = s * s * s * a[0].trace() * a[1].trace() * a[2].trace() +
                        s * s * ((a[0] * a[1]).trace() * a[2].trace() + (a[0] * a[2]).trace() * a[1].trace() +
                                 (a[1] * a[2]).trace() * a[0].trace()) +
                        s * ((a[0] * a[1] * a[2]).trace() + (a[0] * a[2] * a[1]).trace());
  EXPECT_NEAR(r["moment"].get<double>(), closed, 1e-10);
}

TEST(Cli, DensityLaplaceVariance) {
  json r = run_json("eval density --family q --params " + data("q_n3.json") + " --point " + data("m3.json"));
  EXPECT_TRUE(r["log_density"].is_number());
  r = run_json("eval laplace --family q --params " + data("q_n3.json") + " --point " + data("z3.json"));
  EXPECT_TRUE(r["log_laplace"].is_number());
  r = run_json("eval variance --family q --params " + data("q_n3.json"));
  EXPECT_EQ(r["operator"].size(), 5u);
  r = run_json("eval variance --family p --params " + data("p_n3.json"));
  EXPECT_EQ(r["coordinate_covariance"].size(), 5u);
  r = run_json("eval mean --family p --params " + data("p_n3.json"));
  EXPECT_EQ(r["mean"]["diag"].size(), 3u);
}

TEST(Cli, Orders) {
  json r = run_json("orders 3");
  EXPECT_EQ(r["eliminating_orders"].size(), 4u);
  EXPECT_EQ(r["perfect_clique_orders"].size(), 2u);
  r = run_json("orders 1");
  EXPECT_EQ(r["eliminating_orders"].size(), 1u);
  EXPECT_EQ(r["perfect_clique_orders"].size(), 0u);
  r = run_json("orders 9");
  EXPECT_EQ(r["eliminating_orders"].size(), 256u);
  EXPECT_EQ(r["perfect_clique_orders"].size(), 128u);
}

TEST(Cli, LetacMassamConversion) {
  json r = run_json("lm-convert to-shape " + data("h_n3.json"));
  EXPECT_EQ(r["M"], 2);
  r = run_json("lm-convert to-shape " + data("h_n4.json"));
  EXPECT_EQ(r["M"], 2);
  EXPECT_EQ(r["s"][1].get<double>(), -2.0);
  EXPECT_EQ(run("lm-convert to-shape " + data("h_none.json")).code, 4);
  r = run_json("lm-convert to-h " + data("shape_interior.json"));
  EXPECT_EQ(r["alpha"], json::array({1.0, 1.0}));
  const CliRun end = run("lm-convert to-h " + data("shape_end.json"));
  EXPECT_EQ(end.code, 4);
  EXPECT_NE(end.err.find("end vertex"), std::string::npos);
}

TEST(Cli, MissingStatistic) {
  const json r = run_json("missing-stat " + data("missing_ok.csv"));
  EXPECT_EQ(r["M"], 3);
  EXPECT_EQ(r["sigma"], json::array({1.0, 2.0, 1.0, 1.0}));
  EXPECT_EQ(r["T"]["diag"][0].get<double>(), 1.0 + 1.0 + 1.0 + 0.25);
  EXPECT_EQ(run("missing-stat " + data("missing_nonmonotone.csv")).code, 5);
  EXPECT_EQ(run("missing-stat " + data("missing_nopivot.csv")).code, 6);
}

TEST(Cli, VerifySingleSuite) {
  const fs::path report = scratch() / "report.json";
  const CliRun r = run("verify --suite moments --samples 4000 --json " + report.string());
  EXPECT_EQ(r.code, 0) << r.out;
  const json j = json::parse(slurp(report));
  EXPECT_TRUE(j.is_object());
  EXPECT_EQ(run("verify --suite mean --samples 4000 --mutate mean-sign").code, 1);
  EXPECT_EQ(run("verify --suite nonsense").code, 3);
}
