#pragma once

// Sum over permutations of {0..N-1} of the product, over the permutation's
// cycles, of a per-cycle term. Cycles are passed as index sequences
// c0 -> pi(c0) -> ..., rotated to start at their smallest index; terms are
// cached per cycle, so the cost is dominated by N! products.

#include <functional>
#include <vector>

namespace chainwish {

using CycleTerm = std::function<double(const std::vector<int>& cycle)>;

double sum_over_cycle_products(int count, const CycleTerm& term);

// Cycles of a permutation given as a vector of images.
std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm);

}  // namespace chainwish
