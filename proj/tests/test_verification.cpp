#include <cmath>

#include <gtest/gtest.h>

#include "chainwish/verification.hpp"
#include "chainwish/verify_suite.hpp"
#include "support.hpp"

using namespace chainwish;
using namespace testing_support;

TEST(MCReport, ZeroDirectionIsExact) {
  const WishartQ w(ShapeParams(2, Eigen::Vector3d(1.2, 0.8, 1.5)), TridiagSym::identity(3));
  const MCReport r = mc_laplace_q(w, TridiagSym(3), 1000, 1);
  EXPECT_EQ(r.estimate, 1.0);
  EXPECT_EQ(r.std_error, 0.0);
  EXPECT_EQ(r.z, 0.0);
  EXPECT_TRUE(r.passes());
}

TEST(MCReport, DeterministicUnderSeed) {
  const WishartQ w(ShapeParams(2, Eigen::Vector3d(1.2, 0.8, 1.5)), TridiagSym::identity(3));
  TridiagSym z = TridiagSym::identity(3);
  z.off()[0] = 0.2;
  const MCReport a = mc_laplace_q(w, z, 5000, 17), b = mc_laplace_q(w, z, 5000, 17);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.estimate, mc_laplace_q(w, z, 5000, 18).estimate);
  EXPECT_LT(std::abs(a.z), 4.0);
}

TEST(MCReport, PassRule) {
  MCReport r;
  r.estimate = 1.0;
  r.theory = 2.0;
  EXPECT_FALSE(r.passes());
  r.std_error = 1.0;
  r.z = -1.0;
  EXPECT_TRUE(r.passes());
  r.z = 4.5;
  EXPECT_FALSE(r.passes());
}

TEST(MCLaplace, PFamily) {
  const WishartP w(ShapeParams(1, Eigen::Vector3d(0.4, -0.3, 0.9)), IncompleteSym::identity(3));
  IncompleteSym theta = IncompleteSym::identity(3);
  theta.off()[1] = 0.3;
  EXPECT_LT(std::abs(mc_laplace_p(w, 0.5 * theta, 20000, 3).z), 4.0);
}

TEST(MCMeanCov, QFamilyFourVertices) {
  Rng rng = make_stream(101);
  const WishartQ w(random_shape_q(rng, 4, 2), random_P(rng, 4));
  const auto reps = mc_mean_cov([&](Rng& r) { return w.sample(r).coords(); }, 40000, 5, w.mean().coords(),
                                coordinate_covariance(w.covariance()));
  EXPECT_EQ(reps.size(), 7u + 28u);
  for (const auto& r : reps) EXPECT_LT(std::abs(r.z), 4.5) << r.label;
}

TEST(FdJacobian, ScalarAndInverseMean) {
  const double s = 1.7, y = 2.3;
  const Eigen::MatrixXd j = fd_jacobian(
      [&](const Eigen::VectorXd& c) { return Eigen::VectorXd::Constant(1, s / c[0]); }, Eigen::VectorXd::Constant(1, y));
  EXPECT_NEAR(j(0, 0), -s / (y * y), 1e-9);

  // The inverse mean map's Jacobian is the inverse of the mean map's.
  Rng rng = make_stream(102);
  const ShapeParams p = random_shape_q(rng, 4, 3);
  const TridiagSym y4 = random_P(rng, 4);
  const IncompleteSym m = mean_map_q(p, y4);
  const Eigen::MatrixXd jm = fd_jacobian(
      [&](const Eigen::VectorXd& c) { return mean_map_q(p, TridiagSym::from_coords(c)).coords(); }, y4.coords());
  const Eigen::MatrixXd ji = fd_jacobian(
      [&](const Eigen::VectorXd& c) { return inverse_mean_q(p, IncompleteSym::from_coords(c)).coords(); },
      m.coords());
  EXPECT_LT(max_rel(ji * jm, Eigen::MatrixXd::Identity(7, 7)), 1e-6);
}

TEST(KsTest, PowerAndCalibration) {
  Rng rng = make_stream(103);
  std::vector<double> exp1, shape075;
  for (int i = 0; i < 10000; ++i) {
    exp1.push_back(draw_exponential(rng, 1.0));
    shape075.push_back(draw_gamma(rng, 0.75, 1.0));
  }
  EXPECT_GT(ks_test_gamma(exp1, 1.0, 1.0), 0.01);
  EXPECT_LT(ks_test_gamma(exp1, 1.0, 2.0), 1e-6);
  EXPECT_GT(ks_test_gamma(shape075, 0.75, 1.0), 0.01);
  EXPECT_THROW(ks_test_gamma({}, 1.0, 1.0), std::invalid_argument);
}

TEST(Reports, TableAndJson) {
  MCReport r{"mean d1", 1.0, 0.1, 1.05, -0.5, 100, 7};
  const std::string table = reports_table({r});
  EXPECT_NE(table.find("mean d1"), std::string::npos);
  const std::string json = reports_json({r});
  EXPECT_NE(json.find("\"label\""), std::string::npos);
  EXPECT_NE(json.find("\"seed\""), std::string::npos);
}

TEST(VerifySuite, SmallRunsPassAndMutationFails) {
  VerifyOptions opt;
  opt.samples = 4000;
  for (const auto& suite : {std::string("mean"), std::string("moments")}) {
    const auto results = run_verification(suite, opt);
    ASSERT_FALSE(results.empty());
    for (const auto& r : results) EXPECT_TRUE(r.passed) << r.suite << " / " << r.name << ": " << r.detail;
  }
  opt.mutate_mean_sign = true;
  bool any_failed = false;
  for (const auto& r : run_verification("mean", opt)) any_failed |= !r.passed;
  EXPECT_TRUE(any_failed);
  EXPECT_THROW(run_verification("nonsense", opt), std::invalid_argument);
}
