#include "chainwish/wishart_p.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "chainwish/cycle_sum.hpp"
#include "chainwish/recurrent.hpp"

namespace chainwish {

namespace {

void require_shape_p(const ShapeParams& p) {
  for (int v = 1; v <= p.size(); ++v) {
    const bool ok = v == p.pivot() ? p.at(v) > -1.0 : p.at(v) > -1.5;
    if (!ok)
      throw DomainError("shape outside the P_G domain at vertex " + std::to_string(v) +
                            " (need s_i > -3/2 off the pivot and s_M > -1)",
                        v);
  }
}

double log_laplace_kernel(const ShapeParams& p, const IncompleteSym& x) {
  return log_power_q(p.negated(), x) + log_characteristic(x);
}

}  // namespace

double log_normalizer_p(const ShapeParams& p) {
  const int n = p.size();
  double acc = 0.5 * (n - 1) * std::log(std::numbers::pi);
  for (int v = 1; v <= n; ++v) acc += v == p.pivot() ? std::lgamma(p.at(v) + 1.0) : std::lgamma(p.at(v) + 1.5);
  return -acc;
}

LogLinearForm laplace_form_p(const ShapeParams& p) {
  return power_q_form(p.negated()) + characteristic_form(p.size());
}

std::vector<WeightedBlock> basic_blocks_p(const ShapeParams& p) {
  const LogLinearForm f = laplace_form_p(p);
  std::vector<WeightedBlock> out;
  for (int c = 0; c < f.clique.size(); ++c)
    if (f.clique[c] != 0.0) out.push_back({c, c + 1, -f.clique[c]});
  for (int i = 0; i < f.vertex.size(); ++i)
    if (f.vertex[i] != 0.0) out.push_back({i, i, -f.vertex[i]});
  return out;
}

TridiagSym mean_map_p(const ShapeParams& p, const IncompleteSym& x) {
  if (p.size() != x.size()) throw DimensionError("mean_map_p: size mismatch");
  require_Q(x, "mean_map_p");
  return -laplace_form_p(p).gradient(x);
}

TridiagSym covariance_apply_p(const ShapeParams& p, const IncompleteSym& x, const IncompleteSym& u) {
  if (p.size() != x.size() || u.size() != x.size()) throw DimensionError("covariance_apply_p: size mismatch");
  return laplace_form_p(p).hessian_apply(x, u);
}

BandOperator covariance_p(const ShapeParams& p, const IncompleteSym& x) {
  require_Q(x, "covariance_p");
  return assemble_operator<IncompleteSym>(x.size(),
                                          [&](const IncompleteSym& u) { return covariance_apply_p(p, x, u); });
}

WishartP::WishartP(ShapeParams p, IncompleteSym x) : p_(std::move(p)), x_(std::move(x)) {
  if (p_.size() != x_.size()) throw DimensionError("WishartP: shape and matrix sizes differ");
  require_shape_p(p_);
  require_Q(x_, "WishartP natural parameter");

  IncompleteSym cur = x_;
  int lo = 0, hi = x_.size() - 1, rel_pivot = p_.pivot();
  while (hi > lo) {
    if (rel_pivot >= 2) {
      auto peel = split_left_q(cur);
      steps_.push_back({lo, true, peel.head, peel.slope, p_.s()[lo] + 1.5});
      cur = std::move(peel.rest);
      ++lo;
      --rel_pivot;
    } else {
      auto peel = split_right_q(cur);
      steps_.push_back({hi, false, peel.head, peel.slope, p_.s()[hi] + 1.5});
      cur = std::move(peel.rest);
      --hi;
    }
  }
  base_rate_ = cur.diag(0);
}

double WishartP::log_density(const TridiagSym& y) const {
  if (y.size() != size()) throw DimensionError("log_density: size mismatch");
  if (!is_in_P(y)) return -std::numeric_limits<double>::infinity();
  return log_normalizer_p(p_) + log_power_p(p_, y) - pairing(y, x_) - log_laplace_kernel(p_, x_);
}

double WishartP::log_laplace(const IncompleteSym& theta) const {
  const IncompleteSym shifted = x_ + theta;
  require_Q(shifted, "log_laplace: x + theta");
  return log_laplace_kernel(p_, shifted) - log_laplace_kernel(p_, x_);
}

double WishartP::moment(const std::vector<IncompleteSym>& xs, int max_order) const {
  const int count = static_cast<int>(xs.size());
  if (count > max_order)
    throw std::invalid_argument("moment order " + std::to_string(count) + " exceeds the cap " +
                                std::to_string(max_order));
  const auto blocks = basic_blocks_p(p_);
  const auto block_of = [](const IncompleteSym& m, const WeightedBlock& b) {
    return m.block(b.first, b.last).dense();
  };
  std::vector<std::vector<Eigen::MatrixXd>> products(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Eigen::MatrixXd inv = block_of(x_, blocks[b]).inverse();
    for (const auto& xj : xs) products[b].push_back(inv * block_of(xj, blocks[b]));
  }
  return sum_over_cycle_products(count, [&](const std::vector<int>& cycle) {
    double t = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Eigen::MatrixXd prod = products[b][static_cast<std::size_t>(cycle[0])];
      for (std::size_t k = 1; k < cycle.size(); ++k) prod = prod * products[b][static_cast<std::size_t>(cycle[k])];
      t += blocks[b].weight * prod.trace();
    }
    return t;
  });
}

TridiagSym WishartP::sample(Rng& rng) const {
  TridiagSym y(size());
  y.diag()[p_.pivot() - 1] = draw_gamma(rng, p_.at(p_.pivot()) + 1.0, base_rate_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    const int v = it->vertex;
    const int nb = it->left ? v + 1 : v - 1;
    const double a = draw_gamma(rng, it->shape, it->alpha);
    const double b = draw_normal(rng, -it->beta, 1.0 / (2.0 * a * x_.diag(nb)));
    y.diag()[v] = a;
    y.off()[std::min(v, nb)] = a * b;
    y.diag()[nb] += a * b * b;
  }
  return y;
}

QuadraticParamsP quadratic_params_p(const ShapeParams& p) {
  const LogLinearForm f = laplace_form_p(p);
  return {-2.0 * f.clique, -2.0 * f.vertex};
}

std::optional<ShapeParams> shape_from_quadratic_p(int pivot, const QuadraticParamsP& q, double tol) {
  const int n = static_cast<int>(q.beta.size());
  if (n < 1 || q.alpha.size() != n - 1 || pivot < 1 || pivot > n) return std::nullopt;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  for (int c = 1; c < n; ++c) s[(c < pivot ? c : c + 1) - 1] = 0.5 * q.alpha[c - 1] - 1.5;
  const auto at = [&](int v) { return v >= 1 && v <= n ? s[v - 1] : 0.0; };
  const double half_beta = 0.5 * q.beta[pivot - 1];
  double s_m;
  if (n == 1)
    s_m = half_beta - 1.0;
  else if (pivot == 1 || pivot == n)
    s_m = half_beta + at(pivot == 1 ? 2 : n - 1);
  else
    s_m = half_beta + at(pivot - 1) + at(pivot + 1) + 1.0;
  s[pivot - 1] = s_m;
  ShapeParams p(pivot, s);
  const QuadraticParamsP back = quadratic_params_p(p);
  // maxCoeff of an empty vector is undefined; alpha is empty when n == 1.
  double err = (back.beta - q.beta).cwiseAbs().maxCoeff();
  if (n > 1) err = std::max(err, (back.alpha - q.alpha).cwiseAbs().maxCoeff());
  if (!(err <= tol * std::max(1.0, q.beta.cwiseAbs().maxCoeff()))) return std::nullopt;
  return p;
}

std::optional<IntegerWitness> integer_feasibility_p(int n, int bound, int min_multiplicity) {
  if (n < 1) throw std::invalid_argument("integer_feasibility_p needs n >= 1");
  const int lo = std::max(0, min_multiplicity);
  for (int pivot = 1; pivot <= n; ++pivot) {
    // Each clique multiplicity fixes one shape entry (alpha = 2 s + 3), and
    // that entry alone fixes at most one vertex multiplicity other than the
    // pivot's (beta = -2 s - 2). Collect the admissible alphas per clique.
    std::vector<std::vector<int>> allowed(static_cast<std::size_t>(n - 1));
    bool dead = false;
    for (int c = 1; c < n && !dead; ++c) {
      const int dependent = c < pivot ? (c + 1 <= pivot - 1 ? c + 1 : 0) : (c >= pivot + 1 && c <= n - 1 ? c : 0);
      for (int a = std::max(lo, 1); a <= bound; ++a) {  // s > -3/2 needs alpha > 0
        const double s = 0.5 * a - 1.5;
        if (dependent != 0) {
          const double beta = -2.0 * s - 2.0;
          if (beta < lo || beta > bound) continue;
        }
        allowed[static_cast<std::size_t>(c - 1)].push_back(a);
      }
      dead = allowed[static_cast<std::size_t>(c - 1)].empty();
    }
    if (dead) continue;
    // Only the cliques next to the pivot interact, through beta_M.
    const auto choices = [&](int c) -> std::vector<int> {
      if (c < 1 || c > n - 1) return {0};
      return allowed[static_cast<std::size_t>(c - 1)];
    };
    for (int a_left : choices(pivot - 1))
      for (int a_right : choices(pivot))
        for (int beta_m = lo; beta_m <= bound; ++beta_m) {
          QuadraticParamsP q{Eigen::VectorXd(n - 1), Eigen::VectorXd::Zero(n)};
          for (int c = 1; c < n; ++c) q.alpha[c - 1] = allowed[static_cast<std::size_t>(c - 1)].front();
          if (pivot - 1 >= 1) q.alpha[pivot - 2] = a_left;
          if (pivot <= n - 1) q.alpha[pivot - 1] = a_right;
          q.beta[pivot - 1] = beta_m;
          // fill the dependent betas from the chosen alphas, then validate
          Eigen::VectorXd s_guess = Eigen::VectorXd::Zero(n);
          for (int c = 1; c < n; ++c) s_guess[(c < pivot ? c : c + 1) - 1] = 0.5 * q.alpha[c - 1] - 1.5;
          const QuadraticParamsP implied = quadratic_params_p(ShapeParams(pivot, s_guess));
          for (int i = 1; i <= n; ++i)
            if (i != pivot) q.beta[i - 1] = implied.beta[i - 1];
          const auto shape = shape_from_quadratic_p(pivot, q);
          if (!shape || !shape->in_P_domain()) continue;
          const QuadraticParamsP exact = quadratic_params_p(*shape);
          bool ok = true;
          for (int i = 1; i <= n && ok; ++i) {
            const double b = exact.beta[i - 1];
            const bool forced_zero = i != pivot && (i == 1 || i == n);
            const int floor_i = forced_zero ? 0 : lo;
            ok = b == std::round(b) && b >= floor_i && b <= bound;
          }
          for (int c = 0; c < n - 1 && ok; ++c) ok = exact.alpha[c] >= std::max(lo, 1) && exact.alpha[c] <= bound;
          if (ok) return IntegerWitness{pivot, exact, *shape};
        }
  }
  return std::nullopt;
}

}  // namespace chainwish
