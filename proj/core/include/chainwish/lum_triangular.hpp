#pragma once

// LU(M): matrices that are lower triangular in rows i < M and upper
// triangular in rows i > M (row M is unrestricted). Every y in P_G factors
// as y = T T^t with T in LU(M) and the chain pattern, by peeling vertex 1
// while M >= 2 and vertex n afterwards.

#include <Eigen/Core>

#include "chainwish/matrix_spaces.hpp"
#include "chainwish/power_functions.hpp"

namespace chainwish {

class LumFactor {
 public:
  // lower[i] = T(i+1, i) for 0 <= i < M-1; upper[k] = T(M-1+k, M+k) for
  // 0 <= k < n-M (0-based matrix indices, 1-based pivot).
  LumFactor(int pivot, Eigen::VectorXd diag, Eigen::VectorXd lower, Eigen::VectorXd upper);

  int size() const { return static_cast<int>(diag_.size()); }
  int pivot() const { return pivot_; }
  const Eigen::VectorXd& diag() const { return diag_; }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  DenseSym dense() const;

 private:
  int pivot_;
  Eigen::VectorXd diag_;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

// y = T T^t for y in P_G.
LumFactor lum_decompose(const TridiagSym& y, int pivot);

// Entries outside the LU(M) pattern are at most tol in magnitude.
bool has_lum_shape(const DenseSym& t, int pivot, double tol = 0.0);
DenseSym lum_multiply(const LumFactor& s, const LumFactor& t);
DenseSym lum_inverse(const LumFactor& t);

// T^{-t} diag(s) T^{-1} where T T^t is the natural parameter whose mean is
// m. Equals the positive definite completion of m for every admissible s.
DenseSym hat_from_factor(const ShapeParams& p, const IncompleteSym& m);

}  // namespace chainwish
