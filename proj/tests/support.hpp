#pragma once

// Random instances and dense reference computations shared by the tests.
// The oracles here use Eigen's dense determinants and inverses only, never
// the band code under test.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "chainwish/matrix_spaces.hpp"
#include "chainwish/power_functions.hpp"
#include "chainwish/random.hpp"

namespace testing_support {

using namespace chainwish;

// y = L L^t with L lower bidiagonal is tridiagonal and positive definite.
inline TridiagSym random_P(Rng& rng, int n) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    l(i, i) = draw_uniform(rng, 0.5, 1.8);
    if (i + 1 < n) l(i + 1, i) = draw_uniform(rng, -1.2, 1.2);
  }
  const Eigen::MatrixXd y = l * l.transpose();
  TridiagSym out(n);
  for (int i = 0; i < n; ++i) out.diag()[i] = y(i, i);
  for (int i = 0; i + 1 < n; ++i) out.off()[i] = y(i, i + 1);
  return out;
}

// pi(W) for a dense positive definite W lies in Q_G.
inline IncompleteSym random_Q(Rng& rng, int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = draw_uniform(rng, -1.0, 1.0);
  const Eigen::MatrixXd w = a * a.transpose() + 0.3 * Eigen::MatrixXd::Identity(n, n);
  IncompleteSym out(n);
  for (int i = 0; i < n; ++i) out.diag()[i] = w(i, i);
  for (int i = 0; i + 1 < n; ++i) out.off()[i] = w(i, i + 1);
  return out;
}

inline TridiagSym random_Z(Rng& rng, int n) {
  TridiagSym z(n);
  for (int i = 0; i < n; ++i) z.diag()[i] = draw_uniform(rng, -1.0, 1.0);
  for (int i = 0; i + 1 < n; ++i) z.off()[i] = draw_uniform(rng, -1.0, 1.0);
  return z;
}

inline IncompleteSym random_I(Rng& rng, int n) {
  IncompleteSym x(n);
  for (int i = 0; i < n; ++i) x.diag()[i] = draw_uniform(rng, -1.0, 1.0);
  for (int i = 0; i + 1 < n; ++i) x.off()[i] = draw_uniform(rng, -1.0, 1.0);
  return x;
}

inline ShapeParams random_shape(Rng& rng, int n, int m, double lo = -2.0, double hi = 3.0) {
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = draw_uniform(rng, lo, hi);
  return {m, s};
}

// s_i > 1/2 off the pivot, s_M > 0.
inline ShapeParams random_shape_q(Rng& rng, int n, int m) {
  Eigen::VectorXd s(n);
  for (int i = 1; i <= n; ++i) s[i - 1] = i == m ? draw_uniform(rng, 0.2, 3.0) : draw_uniform(rng, 0.7, 3.5);
  return {m, s};
}

// s_i > -3/2 off the pivot, s_M > -1.
inline ShapeParams random_shape_p(Rng& rng, int n, int m) {
  Eigen::VectorXd s(n);
  for (int i = 1; i <= n; ++i) s[i - 1] = i == m ? draw_uniform(rng, -0.8, 2.0) : draw_uniform(rng, -1.3, 2.0);
  return {m, s};
}

inline double dense_det(const Eigen::MatrixXd& a, int first, int last) {
  return a.block(first, first, last - first + 1, last - first + 1).determinant();
}

// The literal power function on P_G: leading minors weighted s_i - s_{i+1}
// for i < M, the determinant weighted s_M, trailing minors weighted
// s_i - s_{i-1} for i > M.
inline double literal_log_power_p(const ShapeParams& p, const TridiagSym& y) {
  const Eigen::MatrixXd d = y.dense();
  const int n = p.size(), m = p.pivot();
  double out = p.at(m) * std::log(d.determinant());
  for (int i = 1; i < m; ++i) out += (p.at(i) - p.at(i + 1)) * std::log(dense_det(d, 0, i - 1));
  for (int i = m + 1; i <= n; ++i) out += (p.at(i) - p.at(i - 1)) * std::log(dense_det(d, i - 1, n - 1));
  return out;
}

// The literal power function on Q_G: each vertex v != M contributes the ratio
// |x_{v, v+}| / x_{v+ v+} over its later neighbour v+ (v+1 before the pivot,
// v-1 after it), raised to s_v; the pivot contributes x_MM^{s_M}.
inline double literal_log_power_q(const ShapeParams& p, const IncompleteSym& x) {
  const int n = p.size(), m = p.pivot();
  const auto clique = [&](int c) {  // 1-based clique {c, c+1}
    return std::log(x.diag(c - 1) * x.diag(c) - x.off(c - 1) * x.off(c - 1));
  };
  const auto vert = [&](int v) { return std::log(x.diag(v - 1)); };
  if (n == 1) return p.at(1) * vert(1);
  double out = 0.0;
  // Vertices i < M eliminated first: |x_{i,i+1}| / x_{i+1,i+1} with exponent s_i.
  for (int i = 1; i < m; ++i) out += p.at(i) * (clique(i) - vert(i + 1));
  // Vertices i > M: |x_{i-1,i}| / x_{i-1,i-1} with exponent s_i.
  for (int i = m + 1; i <= n; ++i) out += p.at(i) * (clique(i - 1) - vert(i - 1));
  out += p.at(m) * vert(m);
  return out;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline double max_rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace testing_support
