#include "chainwish/wishart_q.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

#include "chainwish/cycle_sum.hpp"
#include "chainwish/recurrent.hpp"

namespace chainwish {

namespace {

void add_block(IncompleteSym& into, const IncompleteSym& block, int first, double w) {
  const int len = block.size();
  into.diag().segment(first, len) += w * block.diag();
  into.off().segment(first, len - 1) += w * block.off();
}

void require_shape_q(const ShapeParams& p) {
  for (int v = 1; v <= p.size(); ++v) {
    const bool ok = v == p.pivot() ? p.at(v) > 0.0 : p.at(v) > 0.5;
    if (!ok)
      throw DomainError("shape outside the Q_G domain at vertex " + std::to_string(v) +
                            " (need s_i > 1/2 off the pivot and s_M > 0)",
                        v);
  }
}

void check_size(const ShapeParams& p, int n, const char* what) {
  if (p.size() != n) throw DimensionError(std::string(what) + ": shape and matrix sizes differ");
}

}  // namespace

std::vector<WeightedBlock> basic_blocks_q(const ShapeParams& p) {
  const int n = p.size(), m = p.pivot();
  std::vector<WeightedBlock> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    if (i < m)
      out.push_back({0, i - 1, p.at(i) - p.at(i + 1)});
    else if (i == m)
      out.push_back({0, n - 1, p.at(m)});
    else
      out.push_back({i - 1, n - 1, p.at(i) - p.at(i - 1)});
  }
  return out;
}

double log_normalizer_q(const ShapeParams& p) {
  const int n = p.size();
  double acc = 0.5 * (n - 1) * std::log(std::numbers::pi);
  for (int v = 1; v <= n; ++v) acc += v == p.pivot() ? std::lgamma(p.at(v)) : std::lgamma(p.at(v) - 0.5);
  return -acc;
}

IncompleteSym mean_map_q(const ShapeParams& p, const TridiagSym& y) {
  check_size(p, y.size(), "mean_map_q");
  IncompleteSym m(y.size());
  for (const auto& b : basic_blocks_q(p))
    if (b.weight != 0.0) add_block(m, inverse_image_block(y, b.first, b.last), b.first, b.weight);
  return m;
}

IncompleteSym covariance_apply_q(const ShapeParams& p, const TridiagSym& y, const TridiagSym& u) {
  check_size(p, y.size(), "covariance_apply_q");
  IncompleteSym out(y.size());
  for (const auto& b : basic_blocks_q(p))
    if (b.weight != 0.0) out += b.weight * quadratic_apply(padded_inverse(y, b.first, b.last), u);
  return out;
}

BandOperator covariance_q(const ShapeParams& p, const TridiagSym& y) {
  return assemble_operator<TridiagSym>(y.size(), [&](const TridiagSym& u) { return covariance_apply_q(p, y, u); });
}

TridiagSym inverse_mean_q(const ShapeParams& p, const IncompleteSym& m) {
  check_size(p, m.size(), "inverse_mean_q");
  require_shape_q(p);
  require_Q(m, "inverse_mean_q");
  return power_q_form(p).gradient(m);
}

namespace {

// M_I = [((m-hat^{-1})_I)^{-1}]^0 with m-hat^{-1} the Lauritzen image of m.
struct CompletionParts {
  DenseSym hat;
  DenseSym lauritzen;

  explicit CompletionParts(const IncompleteSym& m)
      : hat(hat_completion(m)), lauritzen(lauritzen_map(m).dense()) {}
  DenseSym block(int first, int last) const { return padded_inverse(lauritzen, first, last); }
};

}  // namespace

IncompleteSym variance_apply_q(const ShapeParams& p, const IncompleteSym& m, const TridiagSym& u) {
  check_size(p, m.size(), "variance_apply_q");
  const int n = p.size(), k = p.pivot();
  const CompletionParts parts(m);
  const auto inv = [&](int v) { return 1.0 / p.at(v); };
  IncompleteSym out = (inv(1) + inv(n) - inv(k)) * quadratic_apply(parts.hat, u);
  for (int i = 1; i < k; ++i)
    out += (inv(i + 1) - inv(i)) * quadratic_apply(parts.hat - parts.block(0, i - 1), u);
  for (int i = k + 1; i <= n; ++i)
    out += (inv(i - 1) - inv(i)) * quadratic_apply(parts.hat - parts.block(i - 1, n - 1), u);
  return out;
}

IncompleteSym variance_apply_q_expanded(const ShapeParams& p, const IncompleteSym& m, const TridiagSym& u) {
  check_size(p, m.size(), "variance_apply_q_expanded");
  const int n = p.size(), k = p.pivot();
  const CompletionParts parts(m);
  const auto inv = [&](int v) { return 1.0 / p.at(v); };
  const auto prefix = [&](int i) { return parts.block(0, i - 1); };
  const auto suffix = [&](int i) { return parts.block(i - 1, n - 1); };

  IncompleteSym out(n);
  for (int i = 1; i < k; ++i) {
    DenseSym a = inv(i) * prefix(i);
    for (int j = 1; j < i; ++j) a += (inv(j) - inv(j + 1)) * prefix(j);
    out += (p.at(i) - p.at(i + 1)) * quadratic_apply(a, u);
  }
  {
    DenseSym a = inv(k) * parts.hat;
    for (int j = 1; j < k; ++j) a += (inv(j) - inv(j + 1)) * prefix(j);
    for (int j = k + 1; j <= n; ++j) a += (inv(j) - inv(j - 1)) * suffix(j);
    out += p.at(k) * quadratic_apply(a, u);
  }
  for (int i = k + 1; i <= n; ++i) {
    DenseSym a = inv(i) * suffix(i);
    for (int j = i + 1; j <= n; ++j) a += (inv(j) - inv(j - 1)) * suffix(j);
    out += (p.at(i) - p.at(i - 1)) * quadratic_apply(a, u);
  }
  return out;
}

BandOperator variance_q(const ShapeParams& p, const IncompleteSym& m) {
  return assemble_operator<TridiagSym>(m.size(), [&](const TridiagSym& u) { return variance_apply_q(p, m, u); });
}

BandOperator variance_q_expanded(const ShapeParams& p, const IncompleteSym& m) {
  return assemble_operator<TridiagSym>(m.size(),
                                       [&](const TridiagSym& u) { return variance_apply_q_expanded(p, m, u); });
}

BandPair intertwining_check(const ShapeParams& p, const IncompleteSym& m) {
  const TridiagSym y = inverse_mean_q(p, m);
  return {inverse_image(y).coords(), mean_map_q(p.reciprocal(), lauritzen_map(m)).coords()};
}

double pairing_with_parameter(const ShapeParams& p, const TridiagSym& y) {
  return pairing(y, mean_map_q(p, y));
}

WishartQ::WishartQ(ShapeParams p, TridiagSym y) : p_(std::move(p)), y_(std::move(y)) {
  check_size(p_, y_.size(), "WishartQ");
  require_shape_q(p_);
  require_P(y_, "WishartQ natural parameter");

  TridiagSym cur = y_;
  int lo = 0, hi = y_.size() - 1, rel_pivot = p_.pivot();
  while (hi > lo) {
    if (rel_pivot >= 2) {
      auto peel = split_left_p(cur);
      steps_.push_back({lo, true, peel.head, peel.slope, p_.s()[lo] - 0.5});
      cur = std::move(peel.rest);
      ++lo;
      --rel_pivot;
    } else {
      auto peel = split_right_p(cur);
      steps_.push_back({hi, false, peel.head, peel.slope, p_.s()[hi] - 0.5});
      cur = std::move(peel.rest);
      --hi;
    }
  }
  base_rate_ = cur.diag(0);
}

double WishartQ::log_density(const IncompleteSym& x) const {
  if (x.size() != size()) throw DimensionError("log_density: size mismatch");
  if (!is_in_Q(x)) return -std::numeric_limits<double>::infinity();
  return log_normalizer_q(p_) - pairing(y_, x) + log_power_p(p_, y_) + log_power_q(p_, x) + log_characteristic(x);
}

double WishartQ::log_laplace(const TridiagSym& z) const {
  const TridiagSym shifted = y_ + z;
  require_P(shifted, "log_laplace: y + z");
  const ShapeParams neg = p_.negated();
  return log_power_p(neg, shifted) - log_power_p(neg, y_);
}

double WishartQ::moment(const std::vector<TridiagSym>& z, int max_order) const {
  const int count = static_cast<int>(z.size());
  if (count > max_order)
    throw std::invalid_argument("moment order " + std::to_string(count) + " exceeds the cap " +
                                std::to_string(max_order));
  const auto blocks = basic_blocks_q(p_);
  // products[b][j] = [(y_I)^{-1}]^0 z_j for block b
  std::vector<std::vector<DenseSym>> products(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const DenseSym a = padded_inverse(y_, blocks[b].first, blocks[b].last);
    for (const auto& zj : z) products[b].push_back(a * zj.dense());
  }
  return sum_over_cycle_products(count, [&](const std::vector<int>& cycle) {
    double t = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].weight == 0.0) continue;
      DenseSym prod = products[b][static_cast<std::size_t>(cycle[0])];
      for (std::size_t k = 1; k < cycle.size(); ++k) prod = prod * products[b][static_cast<std::size_t>(cycle[k])];
      t += blocks[b].weight * prod.trace();
    }
    return t;
  });
}

IncompleteSym WishartQ::sample(Rng& rng) const {
  IncompleteSym x(size());
  x.diag()[p_.pivot() - 1] = draw_gamma(rng, p_.at(p_.pivot()), base_rate_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    const int v = it->vertex;
    const int nb = it->left ? v + 1 : v - 1;
    const double x_nb = x.diag(nb);
    const double beta = draw_normal(rng, -it->b, 1.0 / (2.0 * it->a * x_nb));
    const double alpha = draw_gamma(rng, it->shape, it->a);
    x.diag()[v] = alpha + beta * beta * x_nb;
    x.off()[std::min(v, nb)] = beta * x_nb;
  }
  return x;
}

Eigen::VectorXd sigma_from_shape(const ShapeParams& p) {
  const auto blocks = basic_blocks_q(p);
  Eigen::VectorXd sigma(p.size());
  for (int i = 0; i < p.size(); ++i) sigma[i] = 2.0 * blocks[static_cast<std::size_t>(i)].weight;
  return sigma;
}

ShapeParams shape_from_sigma(const Eigen::VectorXd& sigma, int pivot) {
  const int n = static_cast<int>(sigma.size());
  if (pivot < 1 || pivot > n) throw DomainError("pivot outside 1..n");
  Eigen::VectorXd s(n);
  s[pivot - 1] = 0.5 * sigma[pivot - 1];
  for (int i = pivot - 2; i >= 0; --i) s[i] = s[i + 1] + 0.5 * sigma[i];
  for (int i = pivot; i < n; ++i) s[i] = s[i - 1] + 0.5 * sigma[i];
  return {pivot, s};
}

QuadraticSampler QuadraticSampler::from_sigma(const Eigen::VectorXd& sigma, int pivot, const TridiagSym& y) {
  const int n = y.size();
  if (sigma.size() != n) throw DimensionError("sigma must have one entry per vertex");
  require_P(y, "quadratic sampler parameter");
  QuadraticSampler q;
  q.n_ = n;
  const auto blocks = basic_blocks_q(ShapeParams(pivot, Eigen::VectorXd::Ones(n)));
  for (int i = 0; i < n; ++i) {
    const double c = sigma[i];
    if (!(c >= 0.0) || c != std::floor(c))
      throw DomainError("sigma entries must be non-negative integers (vertex " + std::to_string(i + 1) + ")", i + 1);
    if (c == 0.0) continue;
    const auto& b = blocks[static_cast<std::size_t>(i)];
    const int len = b.last - b.first + 1;
    const DenseSym cov = padded_inverse(2.0 * y, b.first, b.last).block(b.first, b.first, len, len);
    q.terms_.push_back({b.first, b.last, static_cast<int>(c)});
    q.factors_.push_back(Eigen::LLT<DenseSym>(cov).matrixL());
  }
  return q;
}

QuadraticSampler QuadraticSampler::from_covariance(std::vector<QuadraticTerm> terms, const DenseSym& sigma) {
  QuadraticSampler q;
  q.n_ = static_cast<int>(sigma.rows());
  for (const auto& t : terms) {
    if (t.first < 0 || t.last >= q.n_ || t.first > t.last || t.count < 0)
      throw DimensionError("quadratic term out of range");
    const int len = t.last - t.first + 1;
    Eigen::LLT<DenseSym> llt(sigma.block(t.first, t.first, len, len));
    if (llt.info() != Eigen::Success) throw DomainError("block covariance is not positive definite");
    q.factors_.push_back(llt.matrixL());
  }
  q.terms_ = std::move(terms);
  return q;
}

IncompleteSym QuadraticSampler::sample(Rng& rng) const {
  IncompleteSym x(n_);
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& term = terms_[t];
    const auto& l = factors_[t];
    Eigen::VectorXd xi(l.rows());
    for (int c = 0; c < term.count; ++c) {
      for (Eigen::Index k = 0; k < xi.size(); ++k) xi[k] = draw_normal(rng, 0.0, 1.0);
      const Eigen::VectorXd v = l * xi;
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        x.diag()[term.first + k] += v[k] * v[k];
        if (k + 1 < v.size()) x.off()[term.first + k] += v[k] * v[k + 1];
      }
    }
  }
  return x;
}

}  // namespace chainwish
