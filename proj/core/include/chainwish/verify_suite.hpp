#pragma once

// The verification battery behind `chainwish verify`: Monte Carlo checks of
// Laplace transforms, means, covariances, third moments and sampler base
// cases, plus the deterministic variance and Jacobian identities they rest on.

#include <cstdint>
#include <string>
#include <vector>

#include "chainwish/verification.hpp"

namespace chainwish {

inline constexpr std::uint64_t kDefaultSeed = 20240613;

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  long samples = 20000;
  double threshold = 4.0;
  // Flip the sign of one basic-block term in the mean used as the reference,
  // to show the mean checks can fail.
  bool mutate_mean_sign = false;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<MCReport> reports;
};

// "all", "laplace", "mean", "variance", "moments" or "samplers".
const std::vector<std::string>& verification_suites();
std::vector<CheckResult> run_verification(const std::string& suite, const VerifyOptions& options);

std::string results_table(const std::vector<CheckResult>& results);
std::string results_json(const std::vector<CheckResult>& results, const VerifyOptions& options);

}  // namespace chainwish
