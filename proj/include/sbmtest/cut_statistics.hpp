#pragma once

#include <cstdint>

#include "sbmtest/graph.hpp"
#include "sbmtest/partition.hpp"

namespace sbmtest {

struct CutCounts {
  std::int64_t across = 0;  // N_a
  std::int64_t within = 0;  // N_w
};

CutCounts cut_counts(const Graph& g, const Partition& x);

// N_w - N_a = sum over edges of x_u x_v.
std::int64_t t_statistic(const Graph& g, const Partition& x);

}  // namespace sbmtest
