#include "chainwish/chain_graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace chainwish {

namespace {

void require_permutation(int n, std::span<const int> seq) {
  if (static_cast<int>(seq.size()) != n)
    throw std::invalid_argument("order has " + std::to_string(seq.size()) +
                                " entries, expected " + std::to_string(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : seq) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("order is not a permutation of 1..n");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

}  // namespace

ChainGraph::ChainGraph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("chain needs at least one vertex");
}

bool ChainGraph::adjacent(int v, int w) const {
  return v >= 1 && w >= 1 && v <= n_ && w <= n_ && (v - w == 1 || w - v == 1);
}

std::vector<Clique> ChainGraph::cliques() const {
  if (n_ == 1) return {{1, 1}};
  std::vector<Clique> out;
  out.reserve(static_cast<std::size_t>(n_ - 1));
  for (int i = 1; i < n_; ++i) out.push_back({i, i + 1});
  return out;
}

std::vector<int> ChainGraph::separators() const {
  std::vector<int> out;
  for (int i = 2; i < n_; ++i) out.push_back(i);
  return out;
}

EliminatingOrder::EliminatingOrder(int n, std::uint64_t mask) : mask_(mask) {
  if (n < 1 || n > kMaxVertices)
    throw std::invalid_argument("eliminating orders are encoded for 1 <= n <= 64");
  if (n < kMaxVertices && (mask >> (n - 1)) != 0)
    throw std::invalid_argument("mask has bits beyond position n-2");
  max_vertex_ = std::popcount(mask) + 1;
  seq_.reserve(static_cast<std::size_t>(n));
  int left = 1;
  int right = n;
  for (int k = 0; k + 1 < n; ++k) {
    if ((mask >> k) & 1U)
      seq_.push_back(left++);
    else
      seq_.push_back(right--);
  }
  seq_.push_back(left);
  pos_.assign(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) pos_[static_cast<std::size_t>(seq_[k] - 1)] = k;
}

EliminatingOrder EliminatingOrder::from_sequence(std::span<const int> seq) {
  const int n = static_cast<int>(seq.size());
  if (!is_eliminating(ChainGraph(n), seq))
    throw std::invalid_argument("sequence is not an eliminating order");
  // Reconstruct the mask greedily from the two runs.
  std::uint64_t mask = 0;
  int left = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (seq[static_cast<std::size_t>(k)] == left) {
      mask |= std::uint64_t{1} << k;
      ++left;
    }
  }
  return EliminatingOrder(n, mask);
}

std::vector<EliminatingOrder> enumerate_eliminating_orders(const ChainGraph& g) {
  const int n = g.size();
  if (n > 30) throw std::invalid_argument("refusing to enumerate 2^(n-1) orders for n > 30");
  std::vector<EliminatingOrder> out;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) out.emplace_back(n, m);
  return out;
}

bool is_eliminating(const ChainGraph& g, std::span<const int> seq) {
  const int n = g.size();
  require_permutation(n, seq);
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pos[static_cast<std::size_t>(seq[k] - 1)] = k;
  for (int v = 1; v <= n; ++v) {
    std::vector<int> later;
    for (int w : {v - 1, v + 1})
      if (g.adjacent(v, w) && pos[static_cast<std::size_t>(w - 1)] > pos[static_cast<std::size_t>(v - 1)])
        later.push_back(w);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b)
        if (!g.adjacent(later[a], later[b])) return false;
  }
  return true;
}

std::vector<int> future_neighbors(const EliminatingOrder& order, int v) {
  std::vector<int> out;
  for (int w : {v - 1, v + 1})
    if (w >= 1 && w <= order.size() && order.precedes(v, w)) out.push_back(w);
  return out;
}

std::vector<int> predecessors(const EliminatingOrder& order, int v) {
  std::vector<int> out;
  for (int k = 0; k < order.position(v); ++k) out.push_back(order.sequence()[static_cast<std::size_t>(k)]);
  std::sort(out.begin(), out.end());
  return out;
}

CliqueOrder::CliqueOrder(int n, std::vector<int> cliques) : n_(n), cliques_(std::move(cliques)) {
  if (n < 2) throw std::invalid_argument("clique orders need n >= 2");
  require_permutation(n - 1, cliques_);
}

Clique CliqueOrder::clique(int k) const {
  const int i = cliques_.at(static_cast<std::size_t>(k - 1));
  return {i, i + 1};
}

bool is_perfect_clique_order(const ChainGraph& g, std::span<const int> cliques) {
  const int n = g.size();
  if (n < 2) return false;
  require_permutation(n - 1, cliques);
  std::vector<bool> covered(static_cast<std::size_t>(n + 1), false);
  for (std::size_t j = 0; j < cliques.size(); ++j) {
    const Clique c{cliques[j], cliques[j] + 1};
    std::vector<int> sep;
    for (int v = c.first; v <= c.last; ++v)
      if (covered[static_cast<std::size_t>(v)]) sep.push_back(v);
    bool inside_earlier = sep.empty();
    for (std::size_t i = 0; i < j && !inside_earlier; ++i) {
      const Clique earlier{cliques[i], cliques[i] + 1};
      inside_earlier = std::all_of(sep.begin(), sep.end(), [&](int v) { return earlier.contains(v); });
    }
    if (!inside_earlier) return false;
    covered[static_cast<std::size_t>(c.first)] = covered[static_cast<std::size_t>(c.last)] = true;
  }
  return true;
}

std::vector<CliqueOrder> enumerate_perfect_clique_orders(const ChainGraph& g) {
  const int n = g.size();
  if (n < 2) throw std::invalid_argument("a single vertex has no clique order");
  std::vector<CliqueOrder> out;
  for (const auto& elim : enumerate_eliminating_orders(ChainGraph(n - 1))) {
    std::vector<int> rev(elim.sequence().rbegin(), elim.sequence().rend());
    out.emplace_back(n, std::move(rev));
  }
  return out;
}

int first_separator(const CliqueOrder& order) {
  if (order.sequence().size() < 2)
    throw std::invalid_argument("first separator needs at least two cliques");
  const Clique a = order.clique(1);
  const Clique b = order.clique(2);
  for (int v = a.first; v <= a.last; ++v)
    if (b.contains(v)) return v;
  throw std::invalid_argument("first two cliques of the order are disjoint");
}

}  // namespace chainwish
