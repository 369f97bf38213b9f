#pragma once

// Gram statistic of a zero-mean sample with monotone missingness along the
// chain. Each row observes a prefix 1..i, a suffix k..n, or everything; the
// prefixes must all end before some vertex M and the suffixes start after it.
//
// Distribution: a row observing block I contributes pi(v v^t) with
// v ~ N(0, Sigma_I), so the statistic is a quadratic construction with block
// covariances Sigma_I. With concentration K = Sigma^{-1} in P_G this agrees
// with the Wishart law on Q_G at natural parameter y = K / 2 only for the full
// block: a proper prefix or suffix has marginal precision (Sigma_I)^{-1},
// which differs from K_I by a Schur complement term at the boundary vertex.

#include <optional>
#include <stdexcept>
#include <vector>

#include "chainwish/matrix_spaces.hpp"
#include "chainwish/power_functions.hpp"
#include "chainwish/wishart_q.hpp"

namespace chainwish {

struct MissingDataset {
  int n = 0;
  std::vector<std::vector<std::optional<double>>> rows;
};

class NonMonotonePattern : public std::runtime_error {
 public:
  NonMonotonePattern(const std::string& what, int row) : std::runtime_error(what), row_(row) {}
  int row() const noexcept { return row_; }

 private:
  int row_;
};

class NoConsistentPivot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MissingStatistic {
  IncompleteSym total;          // sum of pi(v v^t) over rows
  Eigen::VectorXd sigma;        // row counts per basic block
  int pivot;                    // smallest admissible M
  ShapeParams shape;            // shape_from_sigma(sigma, pivot)
  std::vector<QuadraticTerm> terms;
};

MissingStatistic missing_statistic(const MissingDataset& data);

// Exact sampler for the statistic under N(0, sigma) rows with the same
// missingness pattern.
QuadraticSampler missing_statistic_sampler(const MissingStatistic& stat, const DenseSym& sigma);

}  // namespace chainwish
