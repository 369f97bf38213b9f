#include "chainwish/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/LU>

#include "chainwish/io.hpp"

namespace chainwish {

namespace {

// Fixed test points. y is diagonally dominant, x has every clique block
// positive definite; the shapes keep the importance-sampling integrals at
// finite variance (s_i > 1 off the pivot on Q, V-shaped towards M on P).
TridiagSym point_y(int n) {
  TridiagSym y(n);
  for (int i = 0; i < n; ++i) y.diag()[i] = 1.5 + 0.25 * i;
  for (int i = 0; i + 1 < n; ++i) y.off()[i] = i % 2 ? -0.4 : 0.5;
  return y;
}

IncompleteSym point_x(int n) {
  IncompleteSym x(n);
  for (int i = 0; i < n; ++i) x.diag()[i] = 1.0 + 0.2 * i;
  for (int i = 0; i + 1 < n; ++i) x.off()[i] = i % 2 ? 0.3 : -0.45;
  return x;
}

ShapeParams shape_q(int n, int m) {
  Eigen::VectorXd s(n);
  for (int i = 1; i <= n; ++i) s[i - 1] = i == m ? 0.9 : 1.4 + 0.35 * ((i + 1) % 3);
  return {m, s};
}

ShapeParams shape_p(int n, int m) {
  Eigen::VectorXd s(n);
  for (int i = 1; i <= n; ++i) s[i - 1] = 0.3 + 0.45 * std::abs(i - m);
  return {m, s};
}

std::string tag(const char* family, int n, int m) {
  return std::string(family) + " n=" + std::to_string(n) + " M=" + std::to_string(m);
}

CheckResult from_reports(std::string suite, std::string name, std::vector<MCReport> reports, double threshold) {
  CheckResult r{std::move(suite), std::move(name), true, "", std::move(reports)};
  double worst = 0.0;
  for (const auto& rep : r.reports) {
    r.passed = r.passed && rep.passes(threshold);
    worst = std::max(worst, std::abs(rep.z));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu estimates, max |z| = %.2f", r.reports.size(), worst);
  r.detail = buf;
  return r;
}

CheckResult deterministic(std::string suite, std::string name, double err, double tol) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "max rel. error %.3g (tol %.1g)", err, tol);
  return {std::move(suite), std::move(name), err <= tol, buf, {}};
}

double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(1.0, std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()));
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

// Reference mean, optionally with one block term sign-flipped.
IncompleteSym reference_mean_q(const ShapeParams& p, const TridiagSym& y, bool mutate) {
  IncompleteSym m = mean_map_q(p, y);
  if (!mutate) return m;
  for (const auto& b : basic_blocks_q(p)) {
    if (b.weight == 0.0) continue;
    const IncompleteSym term = inverse_image_block(y, b.first, b.last);
    m.diag().segment(b.first, term.size()) -= 2.0 * b.weight * term.diag();
    m.off().segment(b.first, term.size() - 1) -= 2.0 * b.weight * term.off();
    break;
  }
  return m;
}

TridiagSym reference_mean_p(const ShapeParams& p, const IncompleteSym& x, bool mutate) {
  TridiagSym m = mean_map_p(p, x);
  if (mutate) m.diag()[0] = -m.diag()[0];
  return m;
}

std::vector<CheckResult> laplace_suite(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  std::uint64_t stream = 100;
  for (int n = 2; n <= 3; ++n)
    for (int m = 1; m <= n; ++m) {
      const TridiagSym y = point_y(n);
      const IncompleteSym x = point_x(n);
      const WishartQ wq(shape_q(n, m), y);
      const WishartP wp(shape_p(n, m), x);
      TridiagSym z = 0.3 * point_y(n);
      z.off() *= -1.0;
      const IncompleteSym theta = 0.4 * point_x(n);
      std::vector<MCReport> reps;
      reps.push_back(mc_laplace_q(wq, z, o.samples, o.seed + stream++));
      reps.push_back(mc_riesz_integral_q(wq.shape(), y, 4 * o.samples, o.seed + stream++));
      out.push_back(from_reports("laplace", tag("Q", n, m), std::move(reps), o.threshold));
      reps.clear();
      reps.push_back(mc_laplace_p(wp, theta, o.samples, o.seed + stream++));
      reps.push_back(mc_riesz_integral_p(wp.shape(), x, 4 * o.samples, o.seed + stream++));
      out.push_back(from_reports("laplace", tag("P", n, m), std::move(reps), o.threshold));
    }
  return out;
}

// Mean (and covariance) of each family's sampler against the closed forms.
std::vector<CheckResult> moment_pair_checks(const VerifyOptions& o, bool want_mean, bool want_cov) {
  std::vector<CheckResult> out;
  const auto select = [&](std::vector<MCReport> all) {
    std::vector<MCReport> kept;
    for (auto& r : all)
      if ((want_mean && r.label.rfind("mean", 0) == 0) || (want_cov && r.label.rfind("cov", 0) == 0))
        kept.push_back(std::move(r));
    return kept;
  };
  const char* suite = want_mean ? "mean" : "variance";
  for (auto [n, m] : {std::pair{4, 2}, std::pair{3, 3}, std::pair{1, 1}}) {
    const WishartQ w(shape_q(n, m), point_y(n));
    const IncompleteSym mean = reference_mean_q(w.shape(), w.natural(), o.mutate_mean_sign);
    const Eigen::MatrixXd cov = coordinate_covariance(w.covariance());
    auto reps = mc_mean_cov([&](Rng& rng) { return w.sample(rng).coords(); }, o.samples,
                            o.seed + 200 + static_cast<std::uint64_t>(10 * n + m), mean.coords(), cov);
    out.push_back(from_reports(suite, tag("Q", n, m), select(std::move(reps)), o.threshold));
  }
  for (auto [n, m] : {std::pair{3, 2}, std::pair{3, 1}, std::pair{1, 1}}) {
    const WishartP w(shape_p(n, m), point_x(n));
    const TridiagSym mean = reference_mean_p(w.shape(), w.natural(), o.mutate_mean_sign);
    const Eigen::MatrixXd cov = coordinate_covariance(w.covariance());
    auto reps = mc_mean_cov([&](Rng& rng) { return w.sample(rng).coords(); }, o.samples,
                            o.seed + 300 + static_cast<std::uint64_t>(10 * n + m), mean.coords(), cov);
    out.push_back(from_reports(suite, tag("P", n, m), select(std::move(reps)), o.threshold));
  }
  // Quadratic construction under the sigma link.
  {
    const Eigen::VectorXd sigma = (Eigen::VectorXd(4) << 1, 2, 1, 3).finished();
    const int m = 2;
    const ShapeParams p = shape_from_sigma(sigma, m);
    const TridiagSym y = point_y(4);
    const auto q = QuadraticSampler::from_sigma(sigma, m, y);
    const IncompleteSym mean = reference_mean_q(p, y, o.mutate_mean_sign);
    const Eigen::MatrixXd cov = coordinate_covariance(covariance_q(p, y));
    auto reps = mc_mean_cov([&](Rng& rng) { return q.sample(rng).coords(); }, o.samples, o.seed + 400,
                            mean.coords(), cov);
    out.push_back(from_reports(suite, "quadratic Q n=4 M=2", select(std::move(reps)), o.threshold));
  }
  return out;
}

std::vector<CheckResult> variance_identities() {
  std::vector<CheckResult> out;
  double triple = 0.0, fd = 0.0;
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      const ShapeParams p = shape_q(n, m);
      const TridiagSym y = point_y(n);
      const IncompleteSym mean = mean_map_q(p, y);
      const Eigen::MatrixXd cov = covariance_q(p, y).matrix;
      triple = std::max({triple, rel_diff(variance_q(p, mean).matrix, cov),
                         rel_diff(variance_q_expanded(p, mean).matrix, cov),
                         rel_diff(covariance_q(p, inverse_mean_q(p, mean)).matrix, cov)});
      const Eigen::MatrixXd jac = fd_jacobian(
          [&](const Eigen::VectorXd& c) { return mean_map_q(p, TridiagSym::from_coords(c)).coords(); }, y.coords());
      fd = std::max(fd, rel_diff(jac, -cov));
    }
  out.push_back(deterministic("variance", "variance forms agree", triple, 1e-8));
  out.push_back(deterministic("variance", "covariance = -d mean (finite differences)", fd, 1e-5));
  return out;
}

std::vector<CheckResult> moments_suite(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  // Exact low orders.
  {
    double err = 0.0;
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= n; ++m) {
        const WishartQ w(shape_q(n, m), point_y(n));
        TridiagSym z1 = point_y(n), z2 = TridiagSym::identity(n);
        z2.off().setConstant(0.25);
        const IncompleteSym mean = w.mean();
        const double m1 = pairing(z1, mean);
        const double m2 = pairing(z1, mean) * pairing(z2, mean) + pairing(z2, w.covariance_apply(z1));
        err = std::max({err, std::abs(w.moment({z1}) - m1) / std::max(1.0, std::abs(m1)),
                        std::abs(w.moment({z1, z2}) - m2) / std::max(1.0, std::abs(m2))});
        const WishartP wp(shape_p(n, m), point_x(n));
        const IncompleteSym t1 = point_x(n), t2 = IncompleteSym::identity(n);
        const TridiagSym mp = wp.mean();
        const double p1 = pairing(mp, t1);
        const double p2 = pairing(mp, t1) * pairing(mp, t2) + pairing(wp.covariance_apply(t1), t2);
        err = std::max({err, std::abs(wp.moment({t1}) - p1) / std::max(1.0, std::abs(p1)),
                        std::abs(wp.moment({t1, t2}) - p2) / std::max(1.0, std::abs(p2))});
      }
    out.push_back(deterministic("moments", "orders 1 and 2 match mean and covariance", err, 1e-9));
  }
  // Third order by simulation.
  for (auto [n, m] : {std::pair{3, 2}, std::pair{2, 1}}) {
    const WishartQ w(shape_q(n, m), point_y(n));
    const TridiagSym z1 = point_y(n), z2 = TridiagSym::identity(n);
    TridiagSym z3 = TridiagSym::identity(n);
    z3.off().setConstant(-0.3);
    auto rep = mc_expectation(
        "E <X,z1><X,z2><X,z3>",
        [&](Rng& rng) {
          const IncompleteSym x = w.sample(rng);
          return pairing(z1, x) * pairing(z2, x) * pairing(z3, x);
        },
        o.samples, o.seed + 500 + static_cast<std::uint64_t>(n), w.moment({z1, z2, z3}));
    out.push_back(from_reports("moments", tag("Q third moment", n, m), {rep}, o.threshold));
    const WishartP wp(shape_p(n, m), point_x(n));
    const IncompleteSym t1 = point_x(n), t2 = IncompleteSym::identity(n);
    IncompleteSym t3 = IncompleteSym::identity(n);
    t3.off().setConstant(0.2);
    auto rep_p = mc_expectation(
        "E <Y,x1><Y,x2><Y,x3>",
        [&](Rng& rng) {
          const TridiagSym yv = wp.sample(rng);
          return pairing(yv, t1) * pairing(yv, t2) * pairing(yv, t3);
        },
        o.samples, o.seed + 600 + static_cast<std::uint64_t>(n), wp.moment({t1, t2, t3}));
    out.push_back(from_reports("moments", tag("P third moment", n, m), {rep_p}, o.threshold));
  }
  return out;
}

std::vector<CheckResult> samplers_suite(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const long draws = std::max(1000L, o.samples / 2);
  const auto ks = [&](const std::string& name, const std::function<double(Rng&)>& draw, double shape, double rate,
                      std::uint64_t stream) {
    Rng rng = make_stream(o.seed, stream);
    std::vector<double> v(static_cast<std::size_t>(draws));
    for (auto& d : v) d = draw(rng);
    const double pv = ks_test_gamma(v, shape, rate);
    char buf[64];
    std::snprintf(buf, sizeof buf, "KS p-value %.4f (need > 0.01)", pv);
    out.push_back({"samplers", name, pv > 0.01, buf, {}});
  };
  for (double s : {0.75, 2.5}) {
    const WishartQ w(ShapeParams(1, Eigen::VectorXd::Constant(1, s)), TridiagSym::identity(1));
    ks("Q n=1 s=" + format_double(s), [&](Rng& rng) { return w.sample(rng).diag(0); }, s, 1.0,
       700 + static_cast<std::uint64_t>(4 * s));
  }
  for (double s : {-0.5, 1.25}) {
    IncompleteSym x(1);
    x.diag()[0] = 2.0;
    const WishartP w(ShapeParams(1, Eigen::VectorXd::Constant(1, s)), x);
    ks("P n=1 s=" + format_double(s), [&](Rng& rng) { return w.sample(rng).diag(0); }, s + 1.0, 2.0,
       800 + static_cast<std::uint64_t>(4 * s + 4));
  }
  // Recursive against quadratic draws, coordinate by coordinate.
  {
    const Eigen::VectorXd sigma = (Eigen::VectorXd(3) << 2, 1, 1).finished();
    const int m = 2;
    const TridiagSym y = point_y(3);
    const WishartQ w(shape_from_sigma(sigma, m), y);
    const auto q = QuadraticSampler::from_sigma(sigma, m, y);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(5);
    std::vector<std::string> labels;
    for (int k = 0; k < 5; ++k) labels.push_back("coord " + std::to_string(k));
    const auto a = mc_expectations(labels, [&](Rng& rng) { return w.sample(rng).coords(); }, o.samples,
                                   o.seed + 900, zero);
    const auto b = mc_expectations(labels, [&](Rng& rng) { return q.sample(rng).coords(); }, o.samples,
                                   o.seed + 901, zero);
    std::vector<MCReport> diff;
    for (std::size_t k = 0; k < a.size(); ++k) {
      MCReport r = a[k];
      r.label = "recursive - quadratic " + labels[k];
      r.estimate = a[k].estimate - b[k].estimate;
      r.std_error = std::hypot(a[k].std_error, b[k].std_error);
      r.theory = 0.0;
      r.z = r.estimate / r.std_error;
      diff.push_back(r);
    }
    out.push_back(from_reports("samplers", "recursive vs quadratic Q n=3 M=2", std::move(diff), o.threshold));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& verification_suites() {
  static const std::vector<std::string> names{"all", "laplace", "mean", "variance", "moments", "samplers"};
  return names;
}

std::vector<CheckResult> run_verification(const std::string& suite, const VerifyOptions& options) {
  const auto& names = verification_suites();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw std::invalid_argument("unknown verification suite \"" + suite + "\"");
  if (options.samples < 2) throw std::invalid_argument("verification needs at least two samples");
  const bool all = suite == "all";
  std::vector<CheckResult> out;
  const auto append = [&](std::vector<CheckResult> r) {
    for (auto& c : r) out.push_back(std::move(c));
  };
  if (all || suite == "laplace") append(laplace_suite(options));
  if (all || suite == "mean") append(moment_pair_checks(options, true, false));
  if (all || suite == "variance") {
    append(variance_identities());
    append(moment_pair_checks(options, false, true));
  }
  if (all || suite == "moments") append(moments_suite(options));
  if (all || suite == "samplers") append(samplers_suite(options));
  return out;
}

std::string results_table(const std::vector<CheckResult>& results) {
  std::string out;
  char line[256];
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-4s %-9s %-44s %s\n", r.passed ? "ok" : "FAIL", r.suite.c_str(),
                  r.name.c_str(), r.detail.c_str());
    out += line;
  }
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  std::snprintf(line, sizeof line, "%zu checks, %td failed\n", results.size(), failed);
  return out + line;
}

std::string results_json(const std::vector<CheckResult>& results, const VerifyOptions& options) {
  bool all_ok = true;
  std::string checks;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    all_ok = all_ok && r.passed;
    checks += i ? ",\n  " : "";
    checks += "{\"suite\": \"" + r.suite + "\", \"name\": \"" + r.name + "\", \"pass\": " +
              (r.passed ? "true" : "false") + ", \"detail\": \"" + r.detail + "\", \"reports\": " +
              reports_json(r.reports) + "}";
  }
  return "{\"seed\": " + std::to_string(options.seed) + ", \"samples\": " + std::to_string(options.samples) +
         ", \"pass\": " + (all_ok ? "true" : "false") + ",\n \"checks\": [" + checks + "]}";
}

}  // namespace chainwish
