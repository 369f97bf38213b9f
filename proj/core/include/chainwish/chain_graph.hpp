#pragma once

// The chain 1 - 2 - ... - n, its eliminating vertex orders and its perfect
// clique orders. Vertices and cliques are 1-based throughout this header;
// clique i is the edge {i, i+1}.

#include <cstdint>
#include <span>
#include <vector>

namespace chainwish {

struct Clique {
  int first;
  int last;

  bool contains(int v) const { return v >= first && v <= last; }
  friend bool operator==(const Clique&, const Clique&) = default;
};

class ChainGraph {
 public:
  explicit ChainGraph(int n);

  int size() const { return n_; }
  bool adjacent(int v, int w) const;
  // n == 1 gives the single clique {1}; otherwise {i, i+1} for i < n.
  std::vector<Clique> cliques() const;
  // Minimal separators {i} for 2 <= i <= n-1.
  std::vector<int> separators() const;

 private:
  int n_;
};

// An eliminating order of the chain is an interleaving of 1, 2, ..., M and
// n, n-1, ..., M that ends at M. It is encoded by n-1 bits: bit k set means
// the (k+1)-th vertex is taken from the left run. M - 1 is the popcount.
class EliminatingOrder {
 public:
  static constexpr int kMaxVertices = 64;

  EliminatingOrder(int n, std::uint64_t mask);
  // Throws std::invalid_argument unless seq is an eliminating order.
  static EliminatingOrder from_sequence(std::span<const int> seq);

  int size() const { return static_cast<int>(seq_.size()); }
  std::uint64_t mask() const { return mask_; }
  int max_vertex() const { return max_vertex_; }
  const std::vector<int>& sequence() const { return seq_; }
  int position(int v) const { return pos_.at(static_cast<std::size_t>(v - 1)); }
  bool precedes(int v, int w) const { return position(v) < position(w); }

  friend bool operator==(const EliminatingOrder& a, const EliminatingOrder& b) {
    return a.seq_ == b.seq_;
  }

 private:
  std::uint64_t mask_;
  int max_vertex_;
  std::vector<int> seq_;
  std::vector<int> pos_;
};

// All 2^{n-1} eliminating orders, in increasing mask order.
std::vector<EliminatingOrder> enumerate_eliminating_orders(const ChainGraph& g);

// Definitional check: every vertex's later neighbours form a complete set.
// Throws std::invalid_argument if seq is not a permutation of 1..n.
bool is_eliminating(const ChainGraph& g, std::span<const int> seq);

// Neighbours of v that come after / before v in the order.
std::vector<int> future_neighbors(const EliminatingOrder& order, int v);
std::vector<int> predecessors(const EliminatingOrder& order, int v);

// A sequence of clique indices (clique i = {i, i+1}).
class CliqueOrder {
 public:
  CliqueOrder(int n, std::vector<int> cliques);

  int vertex_count() const { return n_; }
  const std::vector<int>& sequence() const { return cliques_; }
  Clique clique(int k) const;  // k-th clique of the order, 1-based

  friend bool operator==(const CliqueOrder&, const CliqueOrder&) = default;

 private:
  int n_;
  std::vector<int> cliques_;
};

// Running-intersection check against the first clique's history.
bool is_perfect_clique_order(const ChainGraph& g, std::span<const int> cliques);

// 2^{n-2} perfect orders: reversals of eliminating orders on the chain of
// cliques. Throws std::invalid_argument for n == 1.
std::vector<CliqueOrder> enumerate_perfect_clique_orders(const ChainGraph& g);

// The vertex shared by the first two cliques. Needs at least two cliques.
int first_separator(const CliqueOrder& order);

}  // namespace chainwish
