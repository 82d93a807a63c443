#pragma once

#include <cstdint>
#include <optional>

#include "sbmtest/graph.hpp"
#include "sbmtest/recovery.hpp"
#include "sbmtest/sbm.hpp"
#include "sbmtest/test_result.hpp"

namespace sbmtest {

struct TstConfig {
  double eta = 0.85;    // edge subsampling rate for G1
  double kappa = 0.75;  // threshold multiplier
  // false: oriented statistic, reject when it exceeds the threshold.
  // true: absolute value of the difference (rate 1/2 theory form).
  bool two_sided = false;
  double delta = 0.1;   // recorded only; the threshold does not depend on it
  RecoverySettings recovery;

  void validate() const;
};

// The part of the test that depends on G only: the split G = G1 + G~ and
// the estimate recovered from G1. One reference can be reused against
// several H.
struct TstReference {
  std::size_t n = 0;
  std::size_t edges_g = 0;
  Graph held_out;              // G~
  SpectralPartition estimate;  // recovered from G1
  std::int64_t t_first = 0;    // T(G1, x_hat)
  std::int64_t t_held_out = 0; // T(G~, x_hat)
};

TstReference prepare_tst_reference(const Graph& g, const TstConfig& config, std::uint64_t seed);

// Statistic sign(a-b) * (T(G~)/(1-eta) - T(H)), or its absolute value when
// two_sided. Threshold kappa * sqrt(n(a+b) log(6n)); without params, n(a+b)
// is estimated as 2(|E(G)| + |E(H)|) and the orientation from sign T(G1).
TestResult evaluate_tst(const TstReference& reference, const Graph& h,
                        const std::optional<SbmParams>& params, const TstConfig& config);

TestResult two_sample_test(const Graph& g, const Graph& h, const std::optional<SbmParams>& params,
                           const TstConfig& config, std::uint64_t seed);

// Expected T(G', x_hat) - T(H, x_hat) when x_hat has k errors w.r.t. x placed
// uniformly at random and y differs from x on s nodes.
double expected_t_gap(std::size_t n, std::size_t s, std::size_t k, double a, double b);

}  // namespace sbmtest
