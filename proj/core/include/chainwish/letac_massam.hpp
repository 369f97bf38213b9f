#pragma once

// The two-vector parametrization of power functions on Q_G used for
// decomposable graphs:
//
//   log H(alpha, beta; x) = sum_c alpha_c log|x_c| - sum_{interior i} beta_i log x_ii,
//
// with one alpha per clique and one beta per separator (vertices 2..n-1).
// For interior pivots M the H functions satisfying an equality pattern are
// exactly the power functions exp(log_power_q) of shape (s, M).

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "chainwish/chain_graph.hpp"
#include "chainwish/matrix_spaces.hpp"
#include "chainwish/power_functions.hpp"

namespace chainwish {

struct HParams {
  Eigen::VectorXd alpha;  // n - 1 clique exponents
  Eigen::VectorXd beta;   // n - 2 separator exponents, beta[k] is vertex k + 2

  int size() const { return static_cast<int>(alpha.size()) + 1; }
  // 1-based accessors matching vertex and clique labels.
  double alpha_at(int j) const { return alpha[j - 1]; }
  double beta_at(int i) const { return beta[i - 2]; }
};

double log_h(const HParams& h, const IncompleteSym& x);

// Equality pattern tying the exponents to pivot M (2 <= M <= n-1):
// alpha_j = beta_{j+1} for j <= M-2 and alpha_j = beta_j for j >= M+1.
bool satisfies_pattern(const HParams& h, int pivot, double tol = 1e-12);
// Positivity constraints: every alpha_j > 1/2 and alpha_{M-1} + alpha_M - beta_M > 0.
bool satisfies_bounds(const HParams& h, int pivot);

// First interior pivot whose pattern holds, with the matching shape.
std::optional<ShapeParams> h_to_shape(const HParams& h, double tol = 1e-12);
std::vector<ShapeParams> h_to_shape_all(const HParams& h, double tol = 1e-12);
// Requires an interior pivot: at an end vertex the power function carries
// n-1 diagonal exponents while H only has n-2.
HParams shape_to_h(const ShapeParams& p);

// Membership in the parameter set tied to a perfect clique order, which
// depends on the order only through its first separator.
bool in_order_parameter_set(const HParams& h, const CliqueOrder& order);
// Union over all interior pivots.
bool in_parameter_union(const HParams& h);

// log of the Gamma constant in
//   int exp(-<y, x>) H(x) phi(x) dx = Gamma_1 H(pi(y^{-1})).
// Requires h in the parameter union.
double log_gamma_constant(const HParams& h);

}  // namespace chainwish
