#pragma once

// Wishart laws on P_G with natural parameter x in Q_G:
//
//   density(y) = C(s) Delta_s(y) exp(-<y, x>) / (delta_{-s}(x) phi(x)),
//
// normalized by the Gamma integral over P_G. Its log-Laplace transform is
// the log-linear form log delta_{-s} + log phi (up to a constant), so the
// mean, covariance and moments come from clique blocks and single vertices
// with weights read off that form.

#include <optional>
#include <vector>

#include "chainwish/matrix_spaces.hpp"
#include "chainwish/power_functions.hpp"
#include "chainwish/random.hpp"
#include "chainwish/wishart_q.hpp"

namespace chainwish {

double log_normalizer_p(const ShapeParams& p);

// The form log delta_{-s} + log phi; the mean is minus its gradient.
LogLinearForm laplace_form_p(const ShapeParams& p);
// Clique blocks and vertex singletons weighted by minus the coefficients of
// laplace_form_p. Zero weights are dropped.
std::vector<WeightedBlock> basic_blocks_p(const ShapeParams& p);

TridiagSym mean_map_p(const ShapeParams& p, const IncompleteSym& x);
TridiagSym covariance_apply_p(const ShapeParams& p, const IncompleteSym& x, const IncompleteSym& u);
BandOperator covariance_p(const ShapeParams& p, const IncompleteSym& x);

class WishartP {
 public:
  WishartP(ShapeParams p, IncompleteSym x);

  const ShapeParams& shape() const { return p_; }
  const IncompleteSym& natural() const { return x_; }
  int size() const { return x_.size(); }

  // -infinity outside P_G.
  double log_density(const TridiagSym& y) const;
  // Requires x + theta in Q_G.
  double log_laplace(const IncompleteSym& theta) const;
  TridiagSym mean() const { return mean_map_p(p_, x_); }
  TridiagSym covariance_apply(const IncompleteSym& u) const { return covariance_apply_p(p_, x_, u); }
  BandOperator covariance() const { return covariance_p(p_, x_); }
  // E prod_j <Y, x_j>, capped like WishartQ::moment.
  double moment(const std::vector<IncompleteSym>& xs, int max_order = 6) const;

  TridiagSym sample(Rng& rng) const;

 private:
  struct Step {
    int vertex;
    bool left;
    double alpha;
    double beta;
    double shape;
  };

  ShapeParams p_;
  IncompleteSym x_;
  std::vector<Step> steps_;
  double base_rate_ = 0.0;
};

// Multiplicities of the clique maps (alpha, n-1 entries) and of the vertex
// maps (beta, n entries) whose Riesz measure has the same Laplace transform
// as the P_G family with shape p.
struct QuadraticParamsP {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
};
QuadraticParamsP quadratic_params_p(const ShapeParams& p);
// Inverse direction. Returns nullopt when (alpha, beta) is not of the form
// produced by quadratic_params_p for this pivot.
std::optional<ShapeParams> shape_from_quadratic_p(int pivot, const QuadraticParamsP& q, double tol = 1e-12);

struct IntegerWitness {
  int pivot;
  QuadraticParamsP params;
  ShapeParams shape;
};
// Search for non-negative integer multiplicities, each at most `bound`,
// matching some shape in the P_G domain for some pivot. min_multiplicity = 1
// additionally requires every multiplicity not forced to zero by the pivot
// to be positive.
std::optional<IntegerWitness> integer_feasibility_p(int n, int bound = 20, int min_multiplicity = 0);

}  // namespace chainwish
