#include "chainwish/letac_massam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chainwish/wishart_q.hpp"

namespace chainwish {

namespace {

void check_shape(const HParams& h) {
  if (h.alpha.size() < 1 || h.beta.size() != h.alpha.size() - 1)
    throw DimensionError("H parameters need n-1 clique and n-2 separator exponents");
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

}  // namespace

double log_h(const HParams& h, const IncompleteSym& x) {
  check_shape(h);
  const int n = h.size();
  if (x.size() != n) throw DimensionError("log_h: size mismatch");
  require_Q(x, "log_h");
  double out = 0.0;
  for (int j = 1; j < n; ++j) out += h.alpha_at(j) * clique_log_det(x, j - 1);
  for (int i = 2; i < n; ++i) out -= h.beta_at(i) * std::log(x.diag(i - 1));
  return out;
}

bool satisfies_pattern(const HParams& h, int pivot, double tol) {
  check_shape(h);
  const int n = h.size();
  if (pivot < 2 || pivot > n - 1) return false;
  for (int j = 1; j <= pivot - 2; ++j)
    if (!close(h.alpha_at(j), h.beta_at(j + 1), tol)) return false;
  for (int j = pivot + 1; j <= n - 1; ++j)
    if (!close(h.alpha_at(j), h.beta_at(j), tol)) return false;
  return true;
}

bool satisfies_bounds(const HParams& h, int pivot) {
  check_shape(h);
  for (int j = 1; j < h.size(); ++j)
    if (!(h.alpha_at(j) > 0.5)) return false;
  return h.alpha_at(pivot - 1) + h.alpha_at(pivot) - h.beta_at(pivot) > 0.0;
}

std::vector<ShapeParams> h_to_shape_all(const HParams& h, double tol) {
  check_shape(h);
  const int n = h.size();
  std::vector<ShapeParams> out;
  for (int m = 2; m <= n - 1; ++m) {
    if (!satisfies_pattern(h, m, tol)) continue;
    Eigen::VectorXd s(n);
    for (int j = 1; j <= m - 1; ++j) s[j - 1] = h.alpha_at(j);
    s[m - 1] = h.alpha_at(m - 1) + h.alpha_at(m) - h.beta_at(m);
    for (int j = m + 1; j <= n; ++j) s[j - 1] = h.alpha_at(j - 1);
    out.emplace_back(m, s);
  }
  return out;
}

std::optional<ShapeParams> h_to_shape(const HParams& h, double tol) {
  auto all = h_to_shape_all(h, tol);
  if (all.empty()) return std::nullopt;
  return all.front();
}

HParams shape_to_h(const ShapeParams& p) {
  const int n = p.size(), m = p.pivot();
  if (m < 2 || m > n - 1)
    throw DomainError("pivot M = " + std::to_string(m) +
                          " is an end vertex: its power function has n-1 diagonal exponents, H has n-2",
                      m);
  HParams h{Eigen::VectorXd(n - 1), Eigen::VectorXd(n - 2)};
  for (int j = 1; j <= n - 1; ++j) h.alpha[j - 1] = j <= m - 1 ? p.at(j) : p.at(j + 1);
  for (int i = 2; i <= n - 1; ++i) {
    if (i < m)
      h.beta[i - 2] = p.at(i - 1);
    else if (i == m)
      h.beta[i - 2] = p.at(m - 1) - p.at(m) + p.at(m + 1);
    else
      h.beta[i - 2] = p.at(i + 1);
  }
  return h;
}

bool in_order_parameter_set(const HParams& h, const CliqueOrder& order) {
  if (order.vertex_count() != h.size()) throw DimensionError("clique order and H parameters differ in size");
  const int m = first_separator(order);
  return satisfies_pattern(h, m) && satisfies_bounds(h, m);
}

bool in_parameter_union(const HParams& h) {
  for (int m = 2; m <= h.size() - 1; ++m)
    if (satisfies_pattern(h, m) && satisfies_bounds(h, m)) return true;
  return false;
}

double log_gamma_constant(const HParams& h) {
  for (int m = 2; m <= h.size() - 1; ++m) {
    if (!satisfies_pattern(h, m) || !satisfies_bounds(h, m)) continue;
    for (const auto& p : h_to_shape_all(h))
      if (p.pivot() == m) return -log_normalizer_q(p);
  }
  throw DomainError("H parameters are outside every order's parameter set");
}

}  // namespace chainwish
