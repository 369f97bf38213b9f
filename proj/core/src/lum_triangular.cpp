#include "chainwish/lum_triangular.hpp"

#include <cmath>

#include <Eigen/LU>

#include "chainwish/recurrent.hpp"
#include "chainwish/wishart_q.hpp"

namespace chainwish {

LumFactor::LumFactor(int pivot, Eigen::VectorXd diag, Eigen::VectorXd lower, Eigen::VectorXd upper)
    : pivot_(pivot), diag_(std::move(diag)), lower_(std::move(lower)), upper_(std::move(upper)) {
  const auto n = diag_.size();
  if (n < 1 || pivot_ < 1 || pivot_ > n) throw DimensionError("LumFactor: pivot outside 1..n");
  if (lower_.size() != pivot_ - 1 || upper_.size() != n - pivot_)
    throw DimensionError("LumFactor: expected M-1 lower and n-M upper entries");
}

DenseSym LumFactor::dense() const {
  const int n = size();
  DenseSym t = DenseSym::Zero(n, n);
  for (int i = 0; i < n; ++i) t(i, i) = diag_[i];
  for (int i = 0; i + 1 < pivot_; ++i) t(i + 1, i) = lower_[i];
  for (int k = 0; k < n - pivot_; ++k) t(pivot_ - 1 + k, pivot_ + k) = upper_[k];
  return t;
}

LumFactor lum_decompose(const TridiagSym& y, int pivot) {
  const int n = y.size();
  if (pivot < 1 || pivot > n) throw DimensionError("lum_decompose: pivot outside 1..n");
  if (n == 1) {
    if (!(y.diag(0) > 0.0)) throw DomainError("lum_decompose: not in P_G", 1);
    return {1, Eigen::VectorXd::Constant(1, std::sqrt(y.diag(0))), Eigen::VectorXd(0), Eigen::VectorXd(0)};
  }
  if (pivot >= 2) {
    const auto [a, b, z] = split_left_p(y);
    const LumFactor inner = lum_decompose(z, pivot - 1);
    const double ra = std::sqrt(a);
    Eigen::VectorXd diag(n), lower(pivot - 1);
    diag << ra, inner.diag();
    lower << ra * b, inner.lower();
    return {pivot, diag, lower, inner.upper()};
  }
  const auto [a, b, z] = split_right_p(y);
  const LumFactor inner = lum_decompose(z, 1);
  const double ra = std::sqrt(a);
  Eigen::VectorXd diag(n), upper(n - 1);
  diag << inner.diag(), ra;
  upper << inner.upper(), ra * b;
  return {1, diag, Eigen::VectorXd(0), upper};
}

bool has_lum_shape(const DenseSym& t, int pivot, double tol) {
  const Eigen::Index n = t.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const bool banned = (i + 1 < pivot && j > i) || (i + 1 > pivot && j < i);
      if (banned && std::abs(t(i, j)) > tol) return false;
    }
  return true;
}

DenseSym lum_multiply(const LumFactor& s, const LumFactor& t) {
  if (s.size() != t.size() || s.pivot() != t.pivot()) throw DimensionError("lum_multiply: factors differ in shape");
  return s.dense() * t.dense();
}

DenseSym lum_inverse(const LumFactor& t) {
  Eigen::FullPivLU<DenseSym> lu(t.dense());
  if (!lu.isInvertible()) throw DomainError("lum_inverse: factor is singular");
  return lu.inverse();
}

DenseSym hat_from_factor(const ShapeParams& p, const IncompleteSym& m) {
  const TridiagSym y = inverse_mean_q(p, m);
  const DenseSym t_inv = lum_inverse(lum_decompose(y, p.pivot()));
  return t_inv.transpose() * p.s().asDiagonal() * t_inv;
}

}  // namespace chainwish
