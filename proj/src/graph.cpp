#include "sbmtest/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "sbmtest/error.hpp"

namespace sbmtest {

namespace {

template <typename Key>
void counting_sort(std::size_t n, std::vector<Edge>& edges, Key key) {
  std::vector<std::size_t> start(n + 1, 0);
  for (const Edge& e : edges) ++start[key(e) + 1];
  for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
  std::vector<Edge> out(edges.size());
  for (const Edge& e : edges) out[start[key(e)]++] = e;
  edges.swap(out);
}

}  // namespace

void sort_unique_edges(std::size_t n, std::vector<Edge>& edges) {
  // LSD radix: stable by v, then by u.
  counting_sort(n, edges, [](const Edge& e) { return e.v; });
  counting_sort(n, edges, [](const Edge& e) { return e.u; });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

Graph::Graph(std::size_t n) : n_(n), offsets_(n + 1, 0) {
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::OutOfRange, "graph too large");
  }
}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : Graph(n) {
  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::OutOfRange, "edge (" + std::to_string(e.u) + ", " +
                                             std::to_string(e.v) + ") out of range");
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::InvalidArgument, "self-loop at node " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  sort_unique_edges(n, edges);
  edges_ = std::move(edges);
  build_adjacency();
}

Graph Graph::from_sorted_edges(std::size_t n, std::vector<Edge> edges) {
  Graph g(n);
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so for each node the smaller neighbours
  // (entered as v) arrive in increasing u order before the larger ones.
  for (const Edge& e : edges_) adjacency_[fill[e.v]++] = e.u;
  for (const Edge& e : edges_) adjacency_[fill[e.u]++] = e.v;
}

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (std::size_t u = 0; u < n_; ++u) d = std::max(d, degree(u));
  return d;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(v));
}

void Graph::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) {
    throw Error(ErrorCode::LengthMismatch, "Graph::multiply: vector length mismatch");
  }
  for (std::size_t u = 0; u < n_; ++u) {
    double acc = 0.0;
    for (std::uint32_t v : neighbors(u)) acc += x[v];
    y[u] = acc;
  }
}

void Graph::multiply_block(std::span<const double> x, std::span<double> y,
                           std::size_t p) const {
  if (x.size() != n_ * p || y.size() != n_ * p) {
    throw Error(ErrorCode::LengthMismatch, "Graph::multiply_block: block size mismatch");
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t u = 0; u < n_; ++u) {
    double* out = y.data() + u * p;
    for (std::uint32_t v : neighbors(u)) {
      const double* in = x.data() + static_cast<std::size_t>(v) * p;
      for (std::size_t k = 0; k < p; ++k) out[k] += in[k];
    }
  }
}

}  // namespace sbmtest
