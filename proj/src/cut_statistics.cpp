#include "sbmtest/cut_statistics.hpp"

#include "sbmtest/error.hpp"

namespace sbmtest {

CutCounts cut_counts(const Graph& g, const Partition& x) {
  if (x.size() != g.num_nodes()) {
    throw Error(ErrorCode::LengthMismatch, "cut_counts: partition length differs from n");
  }
  CutCounts c;
  for (const Edge& e : g.edges()) {
    if (x[e.u] == x[e.v]) {
      ++c.within;
    } else {
      ++c.across;
    }
  }
  return c;
}

std::int64_t t_statistic(const Graph& g, const Partition& x) {
  const CutCounts c = cut_counts(g, x);
  return c.within - c.across;
}

}  // namespace sbmtest
