#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sbmtest {

struct Edge {
  std::uint32_t u;
  std::uint32_t v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on nodes 0..n-1. Edges are stored with u < v,
// sorted and unique; adjacency is kept in CSR form.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  // Orients, sorts and deduplicates. Throws on self-loops or ids >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  // Caller guarantees u < v, sorted, unique, in range.
  static Graph from_sorted_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const std::uint32_t> neighbors(std::size_t u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(std::size_t u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t max_degree() const;
  bool has_edge(std::size_t u, std::size_t v) const;

  // y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  // Y = A X for an n x p row-major block.
  void multiply_block(std::span<const double> x, std::span<double> y, std::size_t p) const;

  friend bool operator==(const Graph& g, const Graph& h) {
    return g.n_ == h.n_ && g.edges_ == h.edges_;
  }

 private:
  void build_adjacency();

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> adjacency_;
};

// Linear-time sort of edges by (u, v) followed by deduplication.
void sort_unique_edges(std::size_t n, std::vector<Edge>& edges);

}  // namespace sbmtest
