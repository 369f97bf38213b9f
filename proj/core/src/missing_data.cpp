#include "chainwish/missing_data.hpp"

#include <string>

namespace chainwish {

MissingStatistic missing_statistic(const MissingDataset& data) {
  const int n = data.n;
  if (n < 1) throw DimensionError("dataset needs at least one column");
  IncompleteSym total(n);
  std::vector<int> prefix_count(static_cast<std::size_t>(n + 1), 0);  // by length
  std::vector<int> suffix_count(static_cast<std::size_t>(n + 2), 0);  // by 1-based start
  int full = 0;
  int max_prefix = 0;
  int min_suffix = n + 1;

  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    const auto& row = data.rows[r];
    if (static_cast<int>(row.size()) != n)
      throw DimensionError("row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " fields");
    int first = -1, last = -1, observed = 0;
    for (int k = 0; k < n; ++k) {
      if (!row[static_cast<std::size_t>(k)]) continue;
      if (first < 0) first = k;
      last = k;
      ++observed;
    }
    if (observed == 0) continue;
    const bool contiguous = observed == last - first + 1;
    if (!contiguous || (first != 0 && last != n - 1))
      throw NonMonotonePattern("row " + std::to_string(r + 1) +
                                   " observes neither a prefix, a suffix nor every coordinate",
                               static_cast<int>(r + 1));
    for (int k = first; k <= last; ++k) {
      const double a = *row[static_cast<std::size_t>(k)];
      total.diag()[k] += a * a;
      if (k < last) total.off()[k] += a * *row[static_cast<std::size_t>(k + 1)];
    }
    if (first == 0 && last == n - 1) {
      ++full;
    } else if (first == 0) {
      ++prefix_count[static_cast<std::size_t>(last + 1)];
      max_prefix = std::max(max_prefix, last + 1);
    } else {
      ++suffix_count[static_cast<std::size_t>(first + 1)];
      min_suffix = std::min(min_suffix, first + 1);
    }
  }

  if (max_prefix + 1 >= min_suffix)
    throw NoConsistentPivot("prefixes reach vertex " + std::to_string(max_prefix) + " but a suffix starts at " +
                            std::to_string(min_suffix) + "; no pivot separates them");
  const int pivot = max_prefix + 1;

  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(n);
  for (int i = 1; i < pivot; ++i) sigma[i - 1] = prefix_count[static_cast<std::size_t>(i)];
  sigma[pivot - 1] = full;
  for (int k = pivot + 1; k <= n; ++k) sigma[k - 1] = suffix_count[static_cast<std::size_t>(k)];

  std::vector<QuadraticTerm> terms;
  for (const auto& b : basic_blocks_q(ShapeParams(pivot, Eigen::VectorXd::Ones(n)))) {
    const int idx = b.first == 0 ? (b.last == n - 1 ? pivot : b.last + 1) : b.first + 1;
    const int count = static_cast<int>(sigma[idx - 1]);
    if (count > 0) terms.push_back({b.first, b.last, count});
  }
  return {std::move(total), sigma, pivot, shape_from_sigma(sigma, pivot), std::move(terms)};
}

QuadraticSampler missing_statistic_sampler(const MissingStatistic& stat, const DenseSym& sigma) {
  if (sigma.rows() != stat.total.size()) throw DimensionError("covariance size differs from the dataset");
  return QuadraticSampler::from_covariance(stat.terms, sigma);
}

}  // namespace chainwish
