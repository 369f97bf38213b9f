#include <gtest/gtest.h>

#include "chainwish/lum_triangular.hpp"
#include "chainwish/wishart_q.hpp"
#include "support.hpp"

using namespace chainwish;
using namespace testing_support;

namespace {

// Dense LU(M) matrix with random entries in the allowed pattern.
Eigen::MatrixXd random_lum(Rng& rng, int n, int m) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool banned = (i + 1 < m && j > i) || (i + 1 > m && j < i);
      if (!banned) t(i, j) = i == j ? draw_uniform(rng, 0.8, 2.0) : draw_uniform(rng, -1.0, 1.0);
    }
  return t;
}

Eigen::MatrixXd block(const Eigen::MatrixXd& a, int first, int last) {
  return a.block(first, first, last - first + 1, last - first + 1);
}

Eigen::MatrixXd padded(const Eigen::MatrixXd& k, int n, int first) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  out.block(first, first, k.rows(), k.cols()) = k;
  return out;
}

}  // namespace

TEST(Lum, DecompositionResidualAndShape) {
  Rng rng = make_stream(31);
  for (int n = 1; n <= 9; ++n)
    for (int m = 1; m <= n; ++m) {
      const TridiagSym y = random_P(rng, n);
      const LumFactor t = lum_decompose(y, m);
      const Eigen::MatrixXd td = t.dense();
      EXPECT_TRUE(has_lum_shape(td, m));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (std::abs(i - j) > 1) EXPECT_EQ(td(i, j), 0.0);
      const Eigen::MatrixXd yd = y.dense();
      EXPECT_LE((td * td.transpose() - yd).cwiseAbs().maxCoeff(), 1e-10 * yd.cwiseAbs().maxCoeff());
    }
}

TEST(Lum, ExtremePivotsAreTriangular) {
  Rng rng = make_stream(32);
  const TridiagSym y = random_P(rng, 5);
  const Eigen::MatrixXd lower = lum_decompose(y, 5).dense();
  const Eigen::MatrixXd upper = lum_decompose(y, 1).dense();
  EXPECT_TRUE(lower.isApprox(Eigen::MatrixXd(lower.triangularView<Eigen::Lower>())));
  EXPECT_TRUE(upper.isApprox(Eigen::MatrixXd(upper.triangularView<Eigen::Upper>())));
}

TEST(Lum, GroupClosureAndBlockProducts) {
  Rng rng = make_stream(33);
  for (int n = 2; n <= 7; ++n)
    for (int m = 1; m <= n; ++m) {
      const Eigen::MatrixXd s = random_lum(rng, n, m), t = random_lum(rng, n, m);
      const Eigen::MatrixXd st = s * t;
      EXPECT_TRUE(has_lum_shape(st, m, 1e-13));
      // s(L, U) s(L', U') = s(L L', U U').
      EXPECT_LT(max_rel(block(st, 0, m - 1), block(s, 0, m - 1) * block(t, 0, m - 1)), 1e-12);
      EXPECT_LT(max_rel(block(st, m - 1, n - 1), block(s, m - 1, n - 1) * block(t, m - 1, n - 1)), 1e-12);
      const Eigen::MatrixXd inv = t.inverse();
      EXPECT_TRUE(has_lum_shape(inv, m, 1e-12));
      EXPECT_LT(max_rel(block(inv, 0, m - 1), block(t, 0, m - 1).inverse()), 1e-11);
      EXPECT_LT(max_rel(block(inv, m - 1, n - 1), block(t, m - 1, n - 1).inverse()), 1e-11);
    }
}

TEST(Lum, ChainFactorsMultiplyAndInvert) {
  Rng rng = make_stream(34);
  const int n = 6, m = 3;
  const LumFactor a = lum_decompose(random_P(rng, n), m), b = lum_decompose(random_P(rng, n), m);
  EXPECT_TRUE(has_lum_shape(lum_multiply(a, b), m, 1e-13));
  const Eigen::MatrixXd inv = lum_inverse(a);
  EXPECT_LT(max_rel(inv * a.dense(), Eigen::MatrixXd::Identity(n, n)), 1e-12);
  EXPECT_TRUE(has_lum_shape(inv, m, 1e-12));
  EXPECT_THROW(lum_multiply(a, lum_decompose(random_P(rng, n), 2)), DimensionError);
}

TEST(Lum, SubmatrixLemmas) {
  Rng rng = make_stream(35);
  for (int n = 3; n <= 7; ++n)
    for (int m = 1; m <= n; ++m) {
      const Eigen::MatrixXd s = random_lum(rng, n, m), t = random_lum(rng, n, m);
      Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
      for (int k = 1; k <= m - 1; ++k) {
        // S^t K^0 T = (S_{1:k}^t K T_{1:k})^0 for K on {1..k}.
        const Eigen::MatrixXd kk = block(a, 0, k - 1);
        const Eigen::MatrixXd lhs = s.transpose() * padded(kk, n, 0) * t;
        EXPECT_LT(max_rel(lhs, padded(block(s, 0, k - 1).transpose() * kk * block(t, 0, k - 1), n, 0)), 1e-12);
        // (T A S^t)_{1:k} = T_{1:k} A_{1:k} S^t_{1:k}.
        EXPECT_LT(max_rel(block(t * a * s.transpose(), 0, k - 1),
                          block(t, 0, k - 1) * block(a, 0, k - 1) * block(s, 0, k - 1).transpose()),
                  1e-12);
        EXPECT_LT(max_rel(block(t, 0, k - 1).inverse(), block(t.inverse(), 0, k - 1)), 1e-11);
      }
      for (int k = m + 1; k <= n; ++k) {
        const Eigen::MatrixXd kk = block(a, k - 1, n - 1);
        const Eigen::MatrixXd lhs = s.transpose() * padded(kk, n, k - 1) * t;
        EXPECT_LT(max_rel(lhs, padded(block(s, k - 1, n - 1).transpose() * kk * block(t, k - 1, n - 1), n, k - 1)),
                  1e-12);
        EXPECT_LT(max_rel(block(t * a * s.transpose(), k - 1, n - 1),
                          block(t, k - 1, n - 1) * block(a, k - 1, n - 1) * block(s, k - 1, n - 1).transpose()),
                  1e-12);
        EXPECT_LT(max_rel(block(t, k - 1, n - 1).inverse(), block(t.inverse(), k - 1, n - 1)), 1e-11);
      }
    }
}

TEST(Lum, HatFromFactorIsTheCompletion) {
  Rng rng = make_stream(36);
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= n; ++m) {
      const ShapeParams p = random_shape_q(rng, n, m);
      const IncompleteSym mean = random_Q(rng, n);
      EXPECT_LT(max_rel(hat_from_factor(p, mean), hat_completion(mean)), 1e-9);
    }
}
