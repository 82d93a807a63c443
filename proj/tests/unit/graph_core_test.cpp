#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "sbmtest/error.hpp"
#include "sbmtest/graph.hpp"
#include "sbmtest/partition.hpp"
#include "sbmtest/rng.hpp"
#include "sbmtest/sbm.hpp"

using namespace sbmtest;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng r(seed);
  std::vector<Edge> e;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (r.uniform() < p) e.push_back({u, v});
    }
  }
  return Graph(n, e);
}

}  // namespace

TEST(Partition, RejectsNonBinary) {
  EXPECT_THROW(Partition({1, 0, -1}), Error);
  EXPECT_NO_THROW(Partition({1, -1}));
}

TEST(Partition, HalvesIsBalanced) {
  const Partition x = Partition::halves(10);
  EXPECT_TRUE(x.is_balanced());
  EXPECT_EQ(x[0], 1);
  EXPECT_EQ(x[9], -1);
  EXPECT_EQ(x.count(1), 5u);
}

TEST(Partition, DistortionIsSignInvariant) {
  const Partition x({1, 1, -1, -1, 1, -1});
  const Partition y({1, -1, -1, -1, 1, 1});
  EXPECT_EQ(hamming(x, y), 2u);
  EXPECT_EQ(distortion(x, y), 2u);
  EXPECT_EQ(distortion(x, y.negated()), 2u);
  EXPECT_EQ(distortion(x, x.negated()), 0u);
  EXPECT_THROW(distortion(x, Partition::halves(4)), Error);
}

TEST(Graph, NormalisesEdges) {
  const Graph g(4, {{2, 1}, {1, 2}, {0, 3}, {3, 0}, {1, 3}});
  ASSERT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 3}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
  EXPECT_EQ(g.edges()[2], (Edge{1, 3}));
  EXPECT_TRUE(g.has_edge(3, 1));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.max_degree(), 2u);
}

TEST(Graph, RejectsSelfLoopsAndRange) {
  EXPECT_THROW(Graph(3, {{1, 1}}), Error);
  EXPECT_THROW(Graph(3, {{0, 3}}), Error);
}

TEST(Graph, NeighborsAreSortedAndSymmetric) {
  const Graph g = random_graph(60, 0.1, 1);
  std::size_t total = 0;
  for (std::size_t u = 0; u < g.num_nodes(); ++u) {
    const auto nb = g.neighbors(u);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (auto v : nb) EXPECT_TRUE(g.has_edge(v, u));
    total += nb.size();
  }
  EXPECT_EQ(total, 2 * g.num_edges());
}

TEST(Graph, MultiplyMatchesDense) {
  const std::size_t n = 40;
  const Graph g = random_graph(n, 0.2, 2);
  Rng r(3);
  const std::size_t p = 3;
  std::vector<double> x(n * p);
  for (double& v : x) v = r.normal();
  std::vector<double> y(n * p), y1(n);
  g.multiply_block(x, y, p);
  for (std::size_t k = 0; k < p; ++k) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = x[i * p + k];
    g.multiply(col, y1);
    for (std::size_t i = 0; i < n; ++i) {
      double expect = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (g.has_edge(i, j)) expect += col[j];
      }
      EXPECT_NEAR(y1[i], expect, 1e-12);
      EXPECT_NEAR(y[i * p + k], expect, 1e-12);
    }
  }
}

TEST(Graph, SortUniqueMatchesStdSort) {
  Rng r(9);
  const std::size_t n = 50;
  std::vector<Edge> e;
  for (int i = 0; i < 500; ++i) {
    auto u = static_cast<std::uint32_t>(r.below(n));
    auto v = static_cast<std::uint32_t>(r.below(n));
    if (u == v) continue;
    e.push_back({std::min(u, v), std::max(u, v)});
  }
  std::vector<Edge> ref = e;
  std::sort(ref.begin(), ref.end());
  ref.erase(std::unique(ref.begin(), ref.end()), ref.end());
  sort_unique_edges(n, e);
  EXPECT_EQ(e, ref);
}

TEST(Sbm, SnrAndInverse) {
  EXPECT_DOUBLE_EQ(snr(SbmParams{1000, 15, 5}), 5.0);
  EXPECT_THROW(snr(SbmParams{10, 0, 0}), Error);
  const SbmParams p = params_from_snr(1000, 7.5, 1.0 / 3.0);
  EXPECT_NEAR(snr(p), 7.5, 1e-12);
  EXPECT_NEAR(p.b / p.a, 1.0 / 3.0, 1e-12);
}

TEST(Sbm, SamplingIsDeterministic) {
  const SbmParams p{500, 10, 3};
  const Partition x = Partition::halves(500);
  EXPECT_EQ(sample_sbm(p, x, 5), sample_sbm(p, x, 5));
  EXPECT_FALSE(sample_sbm(p, x, 5) == sample_sbm(p, x, 6));
}

TEST(Sbm, EdgeCountsMatchExpectation) {
  const std::size_t n = 400;
  const SbmParams p{n, 12, 4};
  const Partition x = Partition::halves(n);
  const double within_pairs = 2.0 * (n / 2) * (n / 2 - 1) / 2.0;
  const double across_pairs = (n / 2.0) * (n / 2.0);
  const double ew = within_pairs * p.a / n;
  const double ea = across_pairs * p.b / n;
  double sw = 0.0, sa = 0.0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const Graph g = sample_sbm(p, x, derive_seed(1, r));
    for (const Edge& e : g.edges()) (x[e.u] == x[e.v] ? sw : sa) += 1.0;
  }
  EXPECT_NEAR(sw / reps, ew, 4.0 * std::sqrt(ew / reps));
  EXPECT_NEAR(sa / reps, ea, 4.0 * std::sqrt(ea / reps));
}

TEST(Sbm, ZeroAndFullProbabilities) {
  const Partition x = Partition::halves(6);
  EXPECT_EQ(sample_sbm(SbmParams{6, 0, 0}, x, 1).num_edges(), 0u);
  // a = n: every within pair; b = 0: no across pair.
  const Graph g = sample_sbm(SbmParams{6, 6, 0}, x, 1);
  EXPECT_EQ(g.num_edges(), 6u);
  for (const Edge& e : g.edges()) EXPECT_EQ(x[e.u], x[e.v]);
}

TEST(Sbm, RejectsBadParameters) {
  const Partition x = Partition::halves(10);
  EXPECT_THROW(sample_sbm(SbmParams{10, -1, 1}, x, 0), Error);
  EXPECT_THROW(sample_sbm(SbmParams{10, 11, 1}, x, 0), Error);
  EXPECT_THROW(sample_sbm(SbmParams{12, 1, 1}, x, 0), Error);
}

TEST(Sbm, SubsampleSplitsEdges) {
  const Graph g = sample_sbm(SbmParams{300, 20, 5}, Partition::halves(300), 3);
  const EdgeSplit split = subsample_edges(g, 0.85, 4);
  EXPECT_EQ(split.first.num_edges() + split.rest.num_edges(), g.num_edges());
  for (const Edge& e : split.first.edges()) {
    EXPECT_TRUE(g.has_edge(e.u, e.v));
    EXPECT_FALSE(split.rest.has_edge(e.u, e.v));
  }
  const double frac = static_cast<double>(split.first.num_edges()) / g.num_edges();
  EXPECT_NEAR(frac, 0.85, 0.05);
}

TEST(Sbm, SparsifyKeepsSubset) {
  const Graph g = sample_sbm(SbmParams{300, 20, 5}, Partition::halves(300), 3);
  EXPECT_EQ(sparsify(g, 1.0, 9), g);
  const Graph h = sparsify(g, 0.5, 9);
  for (const Edge& e : h.edges()) EXPECT_TRUE(g.has_edge(e.u, e.v));
  EXPECT_NEAR(static_cast<double>(h.num_edges()) / g.num_edges(), 0.5, 0.06);
  EXPECT_THROW(sparsify(g, 1.5, 0), Error);
}

TEST(Sbm, ShiftPerturbation) {
  const Partition x = Partition::halves(20);
  for (std::size_t s = 0; s <= 10; ++s) {
    const Partition y = perturb_partition(x, s, PerturbMode::Shift, 0);
    EXPECT_TRUE(y.is_balanced());
    EXPECT_EQ(distortion(x, y), 2 * (s / 2)) << "s=" << s;
  }
}

TEST(Sbm, RandomRelabelFlipsExactlyS) {
  const Partition x = Partition::halves(30);
  for (std::size_t s : {1u, 5u, 12u}) {
    const Partition y = perturb_partition(x, s, PerturbMode::RandomRelabel, s);
    EXPECT_EQ(hamming(x, y), s);
  }
  EXPECT_EQ(perturb_partition(x, 5, PerturbMode::RandomRelabel, 3),
            perturb_partition(x, 5, PerturbMode::RandomRelabel, 3));
}
