#include <cmath>

#include <gtest/gtest.h>

#include "chainwish/power_functions.hpp"
#include "chainwish/verification.hpp"
#include "support.hpp"

using namespace chainwish;
using namespace testing_support;

TEST(ShapeParams, Domains) {
  EXPECT_TRUE(ShapeParams(2, Eigen::Vector3d(0.6, 0.1, 0.7)).in_Q_domain());
  EXPECT_FALSE(ShapeParams(2, Eigen::Vector3d(0.5, 0.1, 0.7)).in_Q_domain());
  EXPECT_FALSE(ShapeParams(2, Eigen::Vector3d(0.6, 0.0, 0.7)).in_Q_domain());
  EXPECT_TRUE(ShapeParams(1, Eigen::Vector3d(-0.9, -1.4, -1.4)).in_P_domain());
  EXPECT_FALSE(ShapeParams(1, Eigen::Vector3d(-1.0, 0, 0)).in_P_domain());
  EXPECT_THROW(ShapeParams(4, Eigen::Vector3d(1, 1, 1)), DomainError);
  const ShapeParams p(2, Eigen::Vector3d(1, 2, 3));
  EXPECT_EQ(p.at(0), 0.0);
  EXPECT_EQ(p.at(4), 0.0);
  EXPECT_EQ(p.without_first().pivot(), 1);
  EXPECT_EQ(p.without_last().s(), Eigen::Vector2d(1, 2));
}

TEST(PowerFunctions, MatchLiteralMinorProducts) {
  Rng rng = make_stream(11);
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; m <= n; ++m) {
      const ShapeParams p = random_shape(rng, n, m);
      const TridiagSym y = random_P(rng, n);
      const IncompleteSym x = random_Q(rng, n);
      EXPECT_NEAR(log_power_p(p, y), literal_log_power_p(p, y), 1e-10);
      EXPECT_NEAR(log_power_q(p, x), literal_log_power_q(p, x), 1e-10);
    }
}

TEST(PowerFunctions, ScalarShapeIsDeterminantPower) {
  Rng rng = make_stream(12);
  const TridiagSym y = random_P(rng, 5);
  for (int m = 1; m <= 5; ++m)
    EXPECT_NEAR(log_power_p(ShapeParams(m, Eigen::VectorXd::Constant(5, 1.7)), y), 1.7 * std::log(y.dense().determinant()),
                1e-11);
}

TEST(PowerFunctions, Duality) {
  Rng rng = make_stream(13);
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= n; ++m) {
      const ShapeParams p = random_shape(rng, n, m);
      const TridiagSym y = random_P(rng, n);
      const double rhs = log_power_p(p.negated(), y);
      EXPECT_NEAR(log_power_q(p, inverse_image(y)), rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
    }
}

TEST(PowerFunctions, OrderedVersionsCollapseToPivot) {
  Rng rng = make_stream(14);
  for (int n = 1; n <= 6; ++n) {
    const Eigen::VectorXd s = random_shape(rng, n, 1).s();
    const TridiagSym y = random_P(rng, n);
    const IncompleteSym x = random_Q(rng, n);
    for (const auto& o : enumerate_eliminating_orders(ChainGraph(n))) {
      const ShapeParams p(o.max_vertex(), s);
      EXPECT_NEAR(log_power_p_ordered(s, o, y), log_power_p(p, y), 1e-12 * std::max(1.0, std::abs(log_power_p(p, y))));
      EXPECT_NEAR(log_power_q_ordered(s, o, x), log_power_q(p, x), 1e-12 * std::max(1.0, std::abs(log_power_q(p, x))));
    }
  }
}

TEST(PowerFunctions, OrderOnThreeVerticesMatchesPivotTwo) {
  Rng rng = make_stream(15);
  const TridiagSym y = random_P(rng, 3);
  const Eigen::Vector3d s(0.4, 1.3, -0.6);
  const auto o = EliminatingOrder::from_sequence(std::vector<int>{1, 3, 2});
  // Direct ratio of minors along 1, 3, 2 with all predecessors.
  const Eigen::MatrixXd d = y.dense();
  const double direct = s[0] * std::log(d(0, 0)) + s[2] * (std::log(d(0, 0) * d(2, 2)) - std::log(d(0, 0))) +
                        s[1] * (std::log(d.determinant()) - std::log(d(0, 0) * d(2, 2)));
  EXPECT_NEAR(log_power_p_ordered(s, o, y), direct, 1e-12);
  EXPECT_NEAR(log_power_p(ShapeParams(2, s), y), direct, 1e-12);
}

TEST(PowerFunctions, OutsideConeThrows) {
  const TridiagSym bad(Eigen::Vector2d(1, 1), Eigen::VectorXd::Constant(1, 2.0));
  EXPECT_THROW(log_power_p(ShapeParams(1, Eigen::Vector2d(1, 1)), bad), DomainError);
  const IncompleteSym badx(Eigen::Vector2d(1, 1), Eigen::VectorXd::Constant(1, 2.0));
  EXPECT_THROW(log_power_q(ShapeParams(1, Eigen::Vector2d(1, 1)), badx), DomainError);
}

TEST(LogLinearForm, ReproducesPowerAndCharacteristic) {
  Rng rng = make_stream(16);
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= n; ++m) {
      const ShapeParams p = random_shape(rng, n, m);
      const IncompleteSym x = random_Q(rng, n);
      EXPECT_NEAR(power_q_form(p).evaluate(x), log_power_q(p, x), 1e-11);
      EXPECT_NEAR(characteristic_form(n).evaluate(x), log_characteristic(x), 1e-11);
    }
}

TEST(LogLinearForm, GradientAndHessianMatchFiniteDifferences) {
  Rng rng = make_stream(17);
  for (int n = 1; n <= 5; ++n) {
    const LogLinearForm f = power_q_form(random_shape(rng, n, 1 + n / 2)) + characteristic_form(n);
    const IncompleteSym x = random_Q(rng, n);
    // Gradient under the pairing: d f / d coord_j = <grad, basis_j>, and the
    // off basis element pairs with weight 2.
    Eigen::MatrixXd g = fd_jacobian(
        [&](const Eigen::VectorXd& c) { return Eigen::VectorXd::Constant(1, f.evaluate(IncompleteSym::from_coords(c))); },
        x.coords(), 1e-6);
    Eigen::VectorXd grad = f.gradient(x).coords();
    grad.tail(n - 1) *= 2.0;
    EXPECT_LT(max_rel(g.transpose(), grad), 1e-7);

    const IncompleteSym u = random_I(rng, n);
    const double h = 1e-6;
    const Eigen::VectorXd fd =
        (f.gradient(x + h * u).coords() - f.gradient(x - h * u).coords()) / (2.0 * h);
    EXPECT_LT(max_rel(f.hessian_apply(x, u).coords(), fd), 1e-6);
  }
}

TEST(Characteristic, ScalarCase) {
  const IncompleteSym x(Eigen::VectorXd::Constant(1, 2.5), Eigen::VectorXd(0));
  EXPECT_NEAR(log_characteristic(x), -std::log(2.5), 1e-15);
}

TEST(Homogeneity, MatchesScalingOfThePowerFunction) {
  Rng rng = make_stream(18);
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= n; ++m) {
      const ShapeParams p = random_shape(rng, n, m);
      const TridiagSym y = random_P(rng, n);
      const double c = 2.7;
      const double k = (log_power_p(p.negated(), y) - log_power_p(p.negated(), c * y)) / std::log(c);
      EXPECT_NEAR(homogeneity_degree(p), k, 1e-10);
      EXPECT_NEAR(homogeneity_degree(p), p.s().sum(), 1e-12);
    }
}
