#pragma once

// Monte Carlo and finite-difference oracles. Every estimator splits its
// draws over a fixed number of streams make_stream(seed, k) and reduces the
// shard sums in stream order, so results depend only on (seed, n_samples).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "chainwish/random.hpp"
#include "chainwish/wishart_p.hpp"
#include "chainwish/wishart_q.hpp"

namespace chainwish {

struct MCReport {
  std::string label;
  double estimate = 0.0;
  double std_error = 0.0;
  double theory = 0.0;
  double z = 0.0;  // (estimate - theory) / std_error, 0 when std_error == 0
  long n_samples = 0;
  std::uint64_t seed = 0;

  bool passes(double threshold = 4.0) const;
};

inline constexpr int kShards = 8;

// Mean of f over n draws with its standard error, compared to theory.
MCReport mc_expectation(const std::string& label, const std::function<double(Rng&)>& f, long n, std::uint64_t seed,
                        double theory);

// Several functions of one shared draw; one report per function.
std::vector<MCReport> mc_expectations(const std::vector<std::string>& labels,
                                      const std::function<Eigen::VectorXd(Rng&)>& f, long n, std::uint64_t seed,
                                      const Eigen::VectorXd& theory);

// E exp(-<z, X>) against exp(log_laplace(z)).
MCReport mc_laplace_q(const WishartQ& w, const TridiagSym& z, long n, std::uint64_t seed);
MCReport mc_laplace_p(const WishartP& w, const IncompleteSym& theta, long n, std::uint64_t seed);

// Coordinate means and covariances of a band-valued sampler against closed
// forms. Covariances are estimated around the theoretical mean.
std::vector<MCReport> mc_mean_cov(const std::function<Eigen::VectorXd(Rng&)>& draw_coords, long n,
                                  std::uint64_t seed, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov);

// Integrals of the unnormalized densities by importance sampling from a
// proposal that knows nothing about the Wishart structure: exponential
// diagonals and uniform correlations on each clique. Targets
//   log int_Q exp(-<y, x>) delta_s(x) phi(x) dx   and
//   log int_P exp(-<y, x>) Delta_s(y) dy.
// Reports are on the ratio scale: estimate / closed form, theory 1.
MCReport mc_riesz_integral_q(const ShapeParams& p, const TridiagSym& y, long n, std::uint64_t seed);
MCReport mc_riesz_integral_p(const ShapeParams& p, const IncompleteSym& x, long n, std::uint64_t seed);

// Central differences in coordinates; column j is d f / d coord_j. The step
// for coordinate j is rel_step * max(1, |point_j|).
Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& point, double rel_step = 1e-5);

// One-sample Kolmogorov-Smirnov p-value against Gamma(shape, rate).
double ks_test_gamma(std::vector<double> draws, double shape, double rate);

// Human-readable table and JSON for a set of reports.
std::string reports_table(const std::vector<MCReport>& reports, double threshold = 4.0);
std::string reports_json(const std::vector<MCReport>& reports);

}  // namespace chainwish
