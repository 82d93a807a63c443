#include <gtest/gtest.h>

#include <cmath>

#include "sbmtest/cut_statistics.hpp"
#include "sbmtest/error.hpp"
#include "sbmtest/gof.hpp"
#include "sbmtest/recovery.hpp"
#include "sbmtest/rng.hpp"
#include "sbmtest/sbm.hpp"

using namespace sbmtest;

TEST(GofThreshold, ClosedForm) {
  const GofConfig cfg;
  const double l = std::log(2.0 / 0.05);
  const double expect = 5.0 * 1000 / 4.0 + std::max(std::sqrt(16.0 / 3.0) * std::sqrt(1000 * 5.0 * l),
                                                     16.0 / 3.0 * l);
  EXPECT_DOUBLE_EQ(gof_threshold(SbmParams{1000, 15, 5}, cfg), expect);
  const double expect_b = 5.0 * 1000 / 4.0 - 2.5 +
                          std::max(std::sqrt(16.0 / 3.0) * std::sqrt(1000 * 5.0 * l), 16.0 / 3.0 * l);
  EXPECT_DOUBLE_EQ(gof_threshold(SbmParams{1000, 5, 15}, cfg), expect_b);
}

TEST(GofThreshold, Monotone) {
  const GofConfig cfg;
  EXPECT_LT(gof_threshold(SbmParams{500, 15, 5}, cfg), gof_threshold(SbmParams{1000, 15, 5}, cfg));
  EXPECT_LT(gof_threshold(SbmParams{1000, 15, 4}, cfg), gof_threshold(SbmParams{1000, 15, 5}, cfg));
  GofConfig strict;
  strict.delta = 0.01;
  EXPECT_LT(gof_threshold(SbmParams{1000, 15, 5}, cfg), gof_threshold(SbmParams{1000, 15, 5}, strict));
}

TEST(GofThreshold, RejectsEqualParameters) {
  EXPECT_THROW(gof_threshold(SbmParams{100, 5, 5}, GofConfig{}), Error);
}

TEST(GofTest, EmptyGraphAccepts) {
  const TestResult r = gof_test(Graph(100), Partition::halves(100), SbmParams{100, 15, 5}, GofConfig{});
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_FALSE(r.reject);
  EXPECT_EQ(r.diagnostic("across"), 0.0);
}

TEST(GofTest, SignFlipInvariant) {
  const SbmParams p{400, 15, 5};
  const Partition x = Partition::halves(400);
  const Graph g = sample_sbm(p, perturb_partition(x, 100, PerturbMode::Shift, 0), 1);
  const TestResult r1 = gof_test(g, x, p, GofConfig{});
  const TestResult r2 = gof_test(g, x.negated(), p, GofConfig{});
  EXPECT_EQ(r1.statistic, r2.statistic);
  EXPECT_EQ(r1.reject, r2.reject);
}

TEST(GofTest, DisassortativeUsesWithinCount) {
  const SbmParams p{400, 5, 15};
  const Partition x = Partition::halves(400);
  const Graph g = sample_sbm(p, x, 3);
  const TestResult r = gof_test(g, x, p, GofConfig{});
  EXPECT_EQ(r.statistic, static_cast<double>(cut_counts(g, x).within));
}

TEST(GofTest, PowerAtLargeChange) {
  const SbmParams p{1000, 15, 5};
  const Partition x = Partition::halves(1000);
  const Partition y = perturb_partition(x, 300, PerturbMode::Shift, 0);
  int rejects = 0;
  for (int t = 0; t < 20; ++t) rejects += gof_test(sample_sbm(p, y, derive_seed(5, t)), x, p, GofConfig{}).reject;
  EXPECT_EQ(rejects, 20);
}

// E[N_a] under y with d(x, y) = s: the null mean b n/4 (balanced pairs) plus
// s(n-s)(a-b)/(2n) from the pairs whose relation flipped.
TEST(GofTest, AlternateMeanShift) {
  const std::size_t n = 100, s = 20;
  const SbmParams p{n, 15, 5};
  const Partition x = Partition::halves(n);
  const Partition y = perturb_partition(x, s, PerturbMode::Shift, 0);
  const std::int64_t flipped_to_within = [&] {
    std::int64_t k = 0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) k += (x[u] != x[v]) && (y[u] == y[v]);
    }
    return k;
  }();
  // Exact expectation of N_a^x under SBM(y).
  const double across_x_pairs = (n / 2.0) * (n / 2.0);
  const double expect = (across_x_pairs - flipped_to_within) * p.b / n + flipped_to_within * p.a / n;
  EXPECT_GE(expect - p.b * n / 4.0, s * (n - s) * (p.a - p.b) / (2.0 * n) - 1e-9);
  const int reps = 4000;
  double total = 0.0, total_sq = 0.0;
  for (int t = 0; t < reps; ++t) {
    const double a = static_cast<double>(cut_counts(sample_sbm(p, y, derive_seed(8, t)), x).across);
    total += a;
    total_sq += a * a;
  }
  const double mean = total / reps;
  const double se = std::sqrt((total_sq / reps - mean * mean) / reps);
  EXPECT_NEAR(mean, expect, 4.0 * se);
}

TEST(NaiveGof, TwoCliques) {
  std::vector<Edge> e;
  for (std::uint32_t u = 0; u < 10; ++u) {
    for (std::uint32_t v = u + 1; v < 10; ++v) {
      if ((u < 5) == (v < 5)) e.push_back({u, v});
    }
  }
  const Graph g(10, e);
  const Partition x0 = Partition::halves(10);
  EXPECT_FALSE(naive_gof(g, x0, 2, RecoverySettings::dataset()).reject);
  const Partition far = perturb_partition(x0, 5, PerturbMode::Shift, 0);  // distortion 4
  EXPECT_TRUE(naive_gof(g, far, 2, RecoverySettings::dataset()).reject);
}
