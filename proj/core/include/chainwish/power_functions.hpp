#pragma once

// Generalized power functions on the two cones, all in log scale.
//
// log_power_p  lives on P_G, built from leading minors |y_{1:i}| (i < M),
//              the full determinant and trailing minors |y_{i:n}| (i > M).
// log_power_q  lives on Q_G, built from clique determinants over diagonal
//              entries. The two are dual: log_power_q(s, pi(y^{-1})) equals
//              log_power_p(-s, y).
// Shape vectors use the convention s_0 = s_{n+1} = 0.

#include <Eigen/Core>

#include "chainwish/chain_graph.hpp"
#include "chainwish/matrix_spaces.hpp"

namespace chainwish {

class ShapeParams {
 public:
  // pivot is the vertex M, 1-based.
  ShapeParams(int pivot, Eigen::VectorXd s);

  int size() const { return static_cast<int>(s_.size()); }
  int pivot() const { return pivot_; }
  const Eigen::VectorXd& s() const { return s_; }
  // s_v for a 1-based vertex, 0 outside 1..n.
  double at(int v) const { return v >= 1 && v <= size() ? s_[v - 1] : 0.0; }

  // s_i > 1/2 for i != M and s_M > 0.
  bool in_Q_domain() const;
  // s_i > -3/2 for i != M and s_M > -1.
  bool in_P_domain() const;

  ShapeParams negated() const { return {pivot_, -s_}; }
  ShapeParams reciprocal() const { return {pivot_, s_.cwiseInverse()}; }
  // Drop vertex 1 (pivot moves to M-1) or vertex n (pivot unchanged).
  ShapeParams without_first() const;
  ShapeParams without_last() const;

 private:
  int pivot_;
  Eigen::VectorXd s_;
};

double log_power_p(const ShapeParams& p, const TridiagSym& y);
double log_power_q(const ShapeParams& p, const IncompleteSym& x);

// Order-indexed versions, from ratios of principal minors over the
// predecessors (P side) or the later neighbours (Q side) of each vertex.
double log_power_p_ordered(const Eigen::VectorXd& s, const EliminatingOrder& order, const TridiagSym& y);
double log_power_q_ordered(const Eigen::VectorXd& s, const EliminatingOrder& order, const IncompleteSym& x);

// log of the characteristic function of Q_G: -log x for n == 1, otherwise
// -3/2 sum_i log|x_{i,i+1}| + sum of log x_ii over interior vertices.
double log_characteristic(const IncompleteSym& x);

// Log-linear functions on Q_G: sum_c clique[c] log|x_c| + sum_i vertex[i] log x_ii
// (clique c is the 0-based block {c, c+1}). log_power_q and
// log_characteristic are of this form; their gradients give the inverse mean
// map on Q_G and the mean map of the P_G family.
struct LogLinearForm {
  Eigen::VectorXd clique;  // n - 1 entries
  Eigen::VectorXd vertex;  // n entries

  double evaluate(const IncompleteSym& x) const;
  // Gradient under the pairing: sum_c clique[c] (x_c^{-1})^0 + sum_i vertex[i] / x_ii.
  TridiagSym gradient(const IncompleteSym& x) const;
  // Derivative of gradient() in direction u.
  TridiagSym hessian_apply(const IncompleteSym& x, const IncompleteSym& u) const;

  LogLinearForm& operator+=(const LogLinearForm& o);
  friend LogLinearForm operator+(LogLinearForm a, const LogLinearForm& b) { return a += b; }
};

LogLinearForm power_q_form(const ShapeParams& p);
LogLinearForm characteristic_form(int n);

// Exponent k with log_power_p(-s, c y) = log_power_p(-s, y) - k log c.
// The weighted sum collapses to the plain sum of s.
double homogeneity_degree(const ShapeParams& p);

}  // namespace chainwish
