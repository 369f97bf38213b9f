#include "chainwish/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include "chainwish/io.hpp"

namespace chainwish {

namespace {

// Running mean and centred sum of squares; shards merge in a fixed order.
struct Moments {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++count;
    const double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0) return;
    const long total = count + o.count;
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / static_cast<double>(total);
    count = total;
  }
  double std_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

long shard_size(long n, int k) { return n / kShards + (k < n % kShards ? 1 : 0); }

MCReport make_report(const std::string& label, const Moments& m, std::uint64_t seed, double theory) {
  MCReport r{label, m.mean, m.std_error(), theory, 0.0, m.count, seed};
  if (r.std_error > 0.0) r.z = (r.estimate - r.theory) / r.std_error;
  return r;
}

double min_eigenvalue(const DenseSym& a) {
  Eigen::SelfAdjointEigenSolver<DenseSym> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

// Exponential diagonals and off-diagonals rho sqrt(d_i d_{i+1}) with rho
// uniform on (-1, 1). Returns the log proposal density in band coordinates.
double propose(Rng& rng, double rate, Eigen::VectorXd& diag, Eigen::VectorXd& off) {
  double log_q = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    diag[i] = draw_exponential(rng, rate);
    log_q += std::log(rate) - rate * diag[i];
  }
  for (Eigen::Index i = 0; i < off.size(); ++i) {
    const double scale = std::sqrt(diag[i] * diag[i + 1]);
    off[i] = draw_uniform(rng, -1.0, 1.0) * scale;
    log_q -= std::log(2.0 * scale);
  }
  return log_q;
}

}  // namespace

bool MCReport::passes(double threshold) const {
  if (std_error == 0.0) return std::abs(estimate - theory) <= 1e-12 * std::max(1.0, std::abs(theory));
  return std::abs(z) < threshold;
}

MCReport mc_expectation(const std::string& label, const std::function<double(Rng&)>& f, long n, std::uint64_t seed,
                        double theory) {
  Moments total;
  for (int k = 0; k < kShards; ++k) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(k));
    Moments shard;
    for (long i = 0, m = shard_size(n, k); i < m; ++i) shard.add(f(rng));
    total.merge(shard);
  }
  return make_report(label, total, seed, theory);
}

std::vector<MCReport> mc_expectations(const std::vector<std::string>& labels,
                                      const std::function<Eigen::VectorXd(Rng&)>& f, long n, std::uint64_t seed,
                                      const Eigen::VectorXd& theory) {
  const std::size_t count = labels.size();
  if (static_cast<std::size_t>(theory.size()) != count) throw DimensionError("labels and theory differ in length");
  std::vector<Moments> total(count);
  for (int k = 0; k < kShards; ++k) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(k));
    std::vector<Moments> shard(count);
    for (long i = 0, m = shard_size(n, k); i < m; ++i) {
      const Eigen::VectorXd v = f(rng);
      for (std::size_t c = 0; c < count; ++c) shard[c].add(v[static_cast<Eigen::Index>(c)]);
    }
    for (std::size_t c = 0; c < count; ++c) total[c].merge(shard[c]);
  }
  std::vector<MCReport> out;
  for (std::size_t c = 0; c < count; ++c)
    out.push_back(make_report(labels[c], total[c], seed, theory[static_cast<Eigen::Index>(c)]));
  return out;
}

MCReport mc_laplace_q(const WishartQ& w, const TridiagSym& z, long n, std::uint64_t seed) {
  const double theory = std::exp(w.log_laplace(z));
  return mc_expectation(
      "laplace Q", [&](Rng& rng) { return std::exp(-pairing(z, w.sample(rng))); }, n, seed, theory);
}

MCReport mc_laplace_p(const WishartP& w, const IncompleteSym& theta, long n, std::uint64_t seed) {
  const double theory = std::exp(w.log_laplace(theta));
  return mc_expectation(
      "laplace P", [&](Rng& rng) { return std::exp(-pairing(w.sample(rng), theta)); }, n, seed, theory);
}

std::vector<MCReport> mc_mean_cov(const std::function<Eigen::VectorXd(Rng&)>& draw_coords, long n,
                                  std::uint64_t seed, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
  const Eigen::Index d = mean.size();
  if (cov.rows() != d || cov.cols() != d) throw DimensionError("mc_mean_cov: covariance has the wrong shape");
  std::vector<std::string> labels;
  Eigen::VectorXd theory(d + d * (d + 1) / 2);
  Eigen::Index t = 0;
  for (Eigen::Index a = 0; a < d; ++a) {
    labels.push_back("mean[" + std::to_string(a) + "]");
    theory[t++] = mean[a];
  }
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = a; b < d; ++b) {
      labels.push_back("cov[" + std::to_string(a) + "," + std::to_string(b) + "]");
      theory[t++] = cov(a, b);
    }
  const auto stats = [&](Rng& rng) {
    const Eigen::VectorXd x = draw_coords(rng);
    const Eigen::VectorXd c = x - mean;
    Eigen::VectorXd out(theory.size());
    Eigen::Index k = 0;
    for (Eigen::Index a = 0; a < d; ++a) out[k++] = x[a];
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = a; b < d; ++b) out[k++] = c[a] * c[b];
    return out;
  };
  return mc_expectations(labels, stats, n, seed, theory);
}

MCReport mc_riesz_integral_q(const ShapeParams& p, const TridiagSym& y, long n, std::uint64_t seed) {
  const int dim = y.size();
  if (p.size() != dim) throw DimensionError("mc_riesz_integral_q: size mismatch");
  require_P(y, "mc_riesz_integral_q");
  const double rate = min_eigenvalue(y.dense());
  const double log_closed = -log_normalizer_q(p) - log_power_p(p, y);
  return mc_expectation(
      "integral Q",
      [&](Rng& rng) {
        Eigen::VectorXd d(dim), o(dim - 1);
        const double log_q = propose(rng, rate, d, o);
        const IncompleteSym x(d, o);
        if (!is_in_Q(x)) return 0.0;
        const double log_f = -pairing(y, x) + log_power_q(p, x) + log_characteristic(x);
        return std::exp(log_f - log_q - log_closed);
      },
      n, seed, 1.0);
}

MCReport mc_riesz_integral_p(const ShapeParams& p, const IncompleteSym& x, long n, std::uint64_t seed) {
  const int dim = x.size();
  if (p.size() != dim) throw DimensionError("mc_riesz_integral_p: size mismatch");
  require_Q(x, "mc_riesz_integral_p");
  const double rate = min_eigenvalue(hat_completion(x));
  const double log_closed = -log_normalizer_p(p) + log_power_q(p.negated(), x) + log_characteristic(x);
  return mc_expectation(
      "integral P",
      [&](Rng& rng) {
        Eigen::VectorXd d(dim), o(dim - 1);
        const double log_q = propose(rng, rate, d, o);
        const TridiagSym y(d, o);
        if (!is_in_P(y)) return 0.0;
        const double log_f = -pairing(y, x) + log_power_p(p, y);
        return std::exp(log_f - log_q - log_closed);
      },
      n, seed, 1.0);
}

Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& point, double rel_step) {
  const Eigen::VectorXd f0 = f(point);
  Eigen::MatrixXd jac(f0.size(), point.size());
  for (Eigen::Index j = 0; j < point.size(); ++j) {
    const double h = rel_step * std::max(1.0, std::abs(point[j]));
    Eigen::VectorXd up = point, down = point;
    up[j] += h;
    down[j] -= h;
    jac.col(j) = (f(up) - f(down)) / (2.0 * h);
  }
  return jac;
}

double ks_test_gamma(std::vector<double> draws, double shape, double rate) {
  if (draws.empty()) throw std::invalid_argument("ks_test_gamma needs at least one draw");
  if (!(shape > 0.0) || !(rate > 0.0)) throw std::invalid_argument("ks_test_gamma needs positive shape and rate");
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    if (!(draws[i] > 0.0)) throw std::invalid_argument("ks_test_gamma needs positive draws");
    const double cdf = boost::math::gamma_p(shape, rate * draws[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  // Kolmogorov series with Stephens' finite-sample correction.
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  if (lambda < 0.2) return 1.0;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    p += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

std::string reports_table(const std::vector<MCReport>& reports, double threshold) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %14s %14s %12s %8s  %s\n", "check", "estimate", "theory", "stderr", "z",
                "");
  out += line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-28s %14.6g %14.6g %12.4g %8.3f  %s\n", r.label.c_str(), r.estimate,
                  r.theory, r.std_error, r.z, r.passes(threshold) ? "ok" : "FAIL");
    out += line;
  }
  return out;
}

std::string reports_json(const std::vector<MCReport>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out += i ? ",\n " : "";
    out += "{\"label\": \"" + r.label + "\", \"estimate\": " + format_double(r.estimate) +
           ", \"stderr\": " + format_double(r.std_error) + ", \"theory\": " + format_double(r.theory) +
           ", \"z\": " + format_double(r.z) + ", \"n\": " + std::to_string(r.n_samples) +
           ", \"seed\": " + std::to_string(r.seed) + ", \"pass\": " + (r.passes() ? "true" : "false") + "}";
  }
  return out + "]";
}

}  // namespace chainwish
