#include "chainwish/power_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

namespace chainwish {

namespace {

double positive_log(const SignedLog& v, const char* what) {
  if (v.sign <= 0) throw DomainError(std::string(what) + ": minor is not positive");
  return v.log_abs;
}

}  // namespace

ShapeParams::ShapeParams(int pivot, Eigen::VectorXd s) : pivot_(pivot), s_(std::move(s)) {
  if (s_.size() < 1) throw DimensionError("shape vector must be non-empty");
  if (pivot_ < 1 || pivot_ > s_.size())
    throw DomainError("pivot vertex M = " + std::to_string(pivot_) + " outside 1.." + std::to_string(s_.size()));
  if (!s_.allFinite()) throw DomainError("shape vector has non-finite entries");
}

bool ShapeParams::in_Q_domain() const {
  for (int v = 1; v <= size(); ++v)
    if (v == pivot_ ? !(at(v) > 0.0) : !(at(v) > 0.5)) return false;
  return true;
}

bool ShapeParams::in_P_domain() const {
  for (int v = 1; v <= size(); ++v)
    if (v == pivot_ ? !(at(v) > -1.0) : !(at(v) > -1.5)) return false;
  return true;
}

ShapeParams ShapeParams::without_first() const {
  if (pivot_ < 2) throw DomainError("cannot drop vertex 1 when it is the pivot");
  return {pivot_ - 1, s_.tail(s_.size() - 1)};
}

ShapeParams ShapeParams::without_last() const {
  if (pivot_ == size()) throw DomainError("cannot drop vertex n when it is the pivot");
  return {pivot_, s_.head(s_.size() - 1)};
}

double log_power_p(const ShapeParams& p, const TridiagSym& y) {
  const int n = p.size(), m = p.pivot();
  if (y.size() != n) throw DimensionError("log_power_p: size mismatch");
  const auto lead = log_leading_minors(y);
  const auto trail = log_trailing_minors(y);
  const auto L = [&](int i) { return positive_log(lead[static_cast<std::size_t>(i - 1)], "log_power_p"); };
  const auto T = [&](int i) { return positive_log(trail[static_cast<std::size_t>(i - 1)], "log_power_p"); };
  double out = p.at(m) * L(n);
  for (int i = 1; i < m; ++i) out += (p.at(i) - p.at(i + 1)) * L(i);
  for (int i = m + 1; i <= n; ++i) out += (p.at(i) - p.at(i - 1)) * T(i);
  return out;
}

double log_power_q(const ShapeParams& p, const IncompleteSym& x) {
  const int n = p.size(), m = p.pivot();
  if (x.size() != n) throw DimensionError("log_power_q: size mismatch");
  require_Q(x, "log_power_q");
  const auto lx = [&](int v) { return std::log(x.diag(v - 1)); };
  // clique {i, i+1} in 1-based terms is index i - 1
  double out = 0.0;
  for (int i = 1; i < m; ++i) out += p.at(i) * clique_log_det(x, i - 1);
  for (int i = m + 1; i <= n; ++i) out += p.at(i) * clique_log_det(x, i - 2);
  for (int i = 2; i <= m - 1; ++i) out -= p.at(i - 1) * lx(i);
  out -= (p.at(m - 1) - p.at(m) + p.at(m + 1)) * lx(m);
  for (int i = m + 1; i <= n - 1; ++i) out -= p.at(i + 1) * lx(i);
  return out;
}

double log_power_p_ordered(const Eigen::VectorXd& s, const EliminatingOrder& order, const TridiagSym& y) {
  const int n = order.size();
  if (y.size() != n || s.size() != n) throw DimensionError("log_power_p_ordered: size mismatch");
  require_P(y, "log_power_p_ordered");
  double out = 0.0;
  for (int v = 1; v <= n; ++v) {
    std::vector<int> past;
    for (int u : predecessors(order, v)) past.push_back(u - 1);
    std::vector<int> with_v = past;
    with_v.insert(std::upper_bound(with_v.begin(), with_v.end(), v - 1), v - 1);
    out += s[v - 1] * (log_det_subset(y, with_v).log_abs - log_det_subset(y, past).log_abs);
  }
  return out;
}

double log_power_q_ordered(const Eigen::VectorXd& s, const EliminatingOrder& order, const IncompleteSym& x) {
  const int n = order.size();
  if (x.size() != n || s.size() != n) throw DimensionError("log_power_q_ordered: size mismatch");
  require_Q(x, "log_power_q_ordered");
  double out = 0.0;
  for (int v = 1; v <= n; ++v) {
    const auto next = future_neighbors(order, v);
    if (next.empty()) {
      out += s[v - 1] * std::log(x.diag(v - 1));
    } else {
      const int w = next.front();
      out += s[v - 1] * (clique_log_det(x, std::min(v, w) - 1) - std::log(x.diag(w - 1)));
    }
  }
  return out;
}

double log_characteristic(const IncompleteSym& x) {
  require_Q(x, "log_characteristic");
  const int n = x.size();
  if (n == 1) return -std::log(x.diag(0));
  double out = 0.0;
  for (int i = 0; i + 1 < n; ++i) out -= 1.5 * clique_log_det(x, i);
  for (int i = 1; i + 1 < n; ++i) out += std::log(x.diag(i));
  return out;
}

double LogLinearForm::evaluate(const IncompleteSym& x) const {
  double out = 0.0;
  for (int c = 0; c < clique.size(); ++c) out += clique[c] * clique_log_det(x, c);
  for (int i = 0; i < vertex.size(); ++i) out += vertex[i] * std::log(x.diag(i));
  return out;
}

TridiagSym LogLinearForm::gradient(const IncompleteSym& x) const {
  TridiagSym g(x.size());
  for (int c = 0; c < clique.size(); ++c) {
    const double a = x.diag(c), d = x.diag(c + 1), b = x.off(c);
    const double w = clique[c] / (a * d - b * b);
    g.diag()[c] += w * d;
    g.diag()[c + 1] += w * a;
    g.off()[c] -= w * b;
  }
  for (int i = 0; i < vertex.size(); ++i) g.diag()[i] += vertex[i] / x.diag(i);
  return g;
}

TridiagSym LogLinearForm::hessian_apply(const IncompleteSym& x, const IncompleteSym& u) const {
  TridiagSym h(x.size());
  for (int c = 0; c < clique.size(); ++c) {
    Eigen::Matrix2d xc, uc;
    xc << x.diag(c), x.off(c), x.off(c), x.diag(c + 1);
    uc << u.diag(c), u.off(c), u.off(c), u.diag(c + 1);
    const Eigen::Matrix2d inv = xc.inverse();
    const Eigen::Matrix2d d = -clique[c] * inv * uc * inv;
    h.diag()[c] += d(0, 0);
    h.diag()[c + 1] += d(1, 1);
    h.off()[c] += d(0, 1);
  }
  for (int i = 0; i < vertex.size(); ++i) h.diag()[i] -= vertex[i] * u.diag(i) / (x.diag(i) * x.diag(i));
  return h;
}

LogLinearForm& LogLinearForm::operator+=(const LogLinearForm& o) {
  clique += o.clique;
  vertex += o.vertex;
  return *this;
}

LogLinearForm power_q_form(const ShapeParams& p) {
  const int n = p.size(), m = p.pivot();
  LogLinearForm f{Eigen::VectorXd::Zero(n - 1), Eigen::VectorXd::Zero(n)};
  for (int c = 1; c < n; ++c) f.clique[c - 1] = c < m ? p.at(c) : p.at(c + 1);
  for (int i = 2; i <= m - 1; ++i) f.vertex[i - 1] = -p.at(i - 1);
  f.vertex[m - 1] = -(p.at(m - 1) - p.at(m) + p.at(m + 1));
  for (int i = m + 1; i <= n - 1; ++i) f.vertex[i - 1] = -p.at(i + 1);
  return f;
}

LogLinearForm characteristic_form(int n) {
  LogLinearForm f{Eigen::VectorXd::Constant(n - 1, -1.5), Eigen::VectorXd::Zero(n)};
  if (n == 1) f.vertex[0] = -1.0;
  for (int i = 1; i + 1 < n; ++i) f.vertex[i] = 1.0;
  return f;
}

double homogeneity_degree(const ShapeParams& p) {
  const int n = p.size(), m = p.pivot();
  double k = n * p.at(m);
  for (int i = 1; i < m; ++i) k += i * (p.at(i) - p.at(i + 1));
  for (int i = m + 1; i <= n; ++i) k += (n - i + 1) * (p.at(i) - p.at(i - 1));
  return k;
}

}  // namespace chainwish
