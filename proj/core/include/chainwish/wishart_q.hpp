#pragma once

// Wishart laws on Q_G with natural parameter y in P_G:
//
//   density(x) = C(s) exp(-<y, x>) Delta_s(y) delta_s(x) phi(x),  x in Q_G,
//
// where Delta_s = exp(log_power_p), delta_s = exp(log_power_q) and phi =
// exp(log_characteristic). The Laplace transform is Delta_{-s}(y + z) /
// Delta_{-s}(y), which makes every moment a sum over contiguous "basic"
// blocks: prefixes 1..i (i < M), the whole chain, and suffixes i..n (i > M).

#include <cstdint>
#include <vector>

#include "chainwish/matrix_spaces.hpp"
#include "chainwish/power_functions.hpp"
#include "chainwish/random.hpp"

namespace chainwish {

// A contiguous 0-based index block [first, last] with a real weight.
struct WeightedBlock {
  int first;
  int last;
  double weight;
};

// Prefix/full/suffix blocks with weights s_i - s_{i+1}, s_M, s_i - s_{i-1}.
// Zero-weight blocks are kept so the list always has n entries.
std::vector<WeightedBlock> basic_blocks_q(const ShapeParams& p);

double log_normalizer_q(const ShapeParams& p);

// Closed forms in the natural parameter. These skip the shape-domain check so
// they can be evaluated at formal parameters such as 1/s.
IncompleteSym mean_map_q(const ShapeParams& p, const TridiagSym& y);
IncompleteSym covariance_apply_q(const ShapeParams& p, const TridiagSym& y, const TridiagSym& u);
BandOperator covariance_q(const ShapeParams& p, const TridiagSym& y);

// Inverse of the mean map: the y in P_G whose law has mean m.
TridiagSym inverse_mean_q(const ShapeParams& p, const IncompleteSym& m);

// Variance function V(m) = covariance at inverse_mean_q(p, m), written in the
// mean parameter through the completion m-hat. variance_apply_q uses the
// compact form with differences m-hat - M_I; the expanded variant groups the
// same terms block by block and is kept as an independent cross-check.
IncompleteSym variance_apply_q(const ShapeParams& p, const IncompleteSym& m, const TridiagSym& u);
IncompleteSym variance_apply_q_expanded(const ShapeParams& p, const IncompleteSym& m, const TridiagSym& u);
BandOperator variance_q(const ShapeParams& p, const IncompleteSym& m);
BandOperator variance_q_expanded(const ShapeParams& p, const IncompleteSym& m);

struct BandPair {
  Eigen::VectorXd lhs;
  Eigen::VectorXd rhs;
};
// pi(inverse_mean_q(s, m)^{-1}) against mean_map_q(1/s, m-hat^{-1}).
BandPair intertwining_check(const ShapeParams& p, const IncompleteSym& m);

// <y, mean_map_q(p, y)>; constant in y and equal to homogeneity_degree(p).
double pairing_with_parameter(const ShapeParams& p, const TridiagSym& y);

class WishartQ {
 public:
  WishartQ(ShapeParams p, TridiagSym y);

  const ShapeParams& shape() const { return p_; }
  const TridiagSym& natural() const { return y_; }
  int size() const { return y_.size(); }

  // -infinity outside Q_G.
  double log_density(const IncompleteSym& x) const;
  // Requires y + z in P_G.
  double log_laplace(const TridiagSym& z) const;
  IncompleteSym mean() const { return mean_map_q(p_, y_); }
  IncompleteSym covariance_apply(const TridiagSym& u) const { return covariance_apply_q(p_, y_, u); }
  BandOperator covariance() const { return covariance_q(p_, y_); }
  // E prod_j <X, z_j>, as a sum over permutations of the z_j. N = z.size()
  // is capped because the cost grows like N!.
  double moment(const std::vector<TridiagSym>& z, int max_order = 6) const;

  // Exact draw by peeling vertices: Gamma for the head of each peel, Normal
  // for its slope given the inner draw.
  IncompleteSym sample(Rng& rng) const;

 private:
  struct Step {
    int vertex;  // 0-based vertex attached by this step
    bool left;   // attached in front (neighbour vertex + 1) or behind (vertex - 1)
    double a;
    double b;
    double shape;
  };

  ShapeParams p_;
  TridiagSym y_;
  std::vector<Step> steps_;  // peel order; sampling replays it backwards
  double base_rate_ = 0.0;
};

// Quadratic construction: independent Gaussian vectors v on contiguous blocks
// I, each contributing pi(v v^t). With block covariance (2 y_I)^{-1} and the
// basic blocks taken sigma_i times this reproduces WishartQ with
// s built from sigma (sigma_M / 2 = s_M, sigma_i / 2 = s_i - s_{i+-1}).
struct QuadraticTerm {
  int first;  // 0-based
  int last;
  int count;
};

class QuadraticSampler {
 public:
  // sigma is a non-negative integer vector indexed like the basic blocks.
  static QuadraticSampler from_sigma(const Eigen::VectorXd& sigma, int pivot, const TridiagSym& y);
  // Arbitrary blocks, Gaussian covariance Sigma_I taken from a full covariance.
  static QuadraticSampler from_covariance(std::vector<QuadraticTerm> terms, const DenseSym& sigma);

  int size() const { return n_; }
  const std::vector<QuadraticTerm>& terms() const { return terms_; }
  IncompleteSym sample(Rng& rng) const;

 private:
  int n_ = 0;
  std::vector<QuadraticTerm> terms_;
  std::vector<DenseSym> factors_;  // lower Cholesky factors of the block covariances
};

// sigma_i / 2 = weight of the i-th basic block; inverse of shape_from_sigma.
Eigen::VectorXd sigma_from_shape(const ShapeParams& p);
ShapeParams shape_from_sigma(const Eigen::VectorXd& sigma, int pivot);

}  // namespace chainwish
