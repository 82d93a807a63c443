#pragma once

#include <cmath>

#include "sbmtest/graph.hpp"
#include "sbmtest/partition.hpp"
#include "sbmtest/sbm.hpp"
#include "sbmtest/test_result.hpp"

namespace sbmtest {

struct GofConfig {
  double delta = 0.05;
  double c_sqrt = std::sqrt(16.0 / 3.0);
  double c_log = 16.0 / 3.0;

  void validate() const;
};

// a > b: b n/4 + max(c_sqrt sqrt(n b L), c_log L), L = log(2/delta).
// b > a: a n/4 - a/2 + max(c_sqrt sqrt(n a L), c_log L).
double gof_threshold(const SbmParams& params, const GofConfig& config);

// Statistic is the across count when a > b and the within count when b > a;
// rejects when it exceeds the threshold.
TestResult gof_test(const Graph& g, const Partition& x0, const SbmParams& params,
                    const GofConfig& config);

}  // namespace sbmtest
