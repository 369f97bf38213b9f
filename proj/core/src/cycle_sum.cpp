#include "chainwish/cycle_sum.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace chainwish {

std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (auto j = start; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      cycle.push_back(static_cast<int>(j));
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

double sum_over_cycle_products(int count, const CycleTerm& term) {
  if (count < 0) throw std::invalid_argument("negative moment order");
  if (count == 0) return 1.0;
  std::vector<int> perm(static_cast<std::size_t>(count));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::vector<int>, double> cache;
  double total = 0.0;
  do {
    double prod = 1.0;
    // cycles_of starts each cycle at its smallest unvisited index, which is
    // its minimum, so the sequence is already a canonical key.
    for (const auto& c : cycles_of(perm)) {
      auto it = cache.find(c);
      if (it == cache.end()) it = cache.emplace(c, term(c)).first;
      prod *= it->second;
    }
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace chainwish
