#include "sbmtest/gof.hpp"

#include <algorithm>

#include "sbmtest/cut_statistics.hpp"
#include "sbmtest/error.hpp"

namespace sbmtest {

void GofConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "gof: delta must lie in (0, 1)");
  }
  if (!(c_sqrt > 0.0) || !(c_log > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "gof: c_sqrt and c_log must be > 0");
  }
}

double gof_threshold(const SbmParams& params, const GofConfig& config) {
  config.validate();
  params.validate();
  if (params.a == params.b) throw Error(ErrorCode::NoSignal, "gof: a = b carries no signal");
  const double n = static_cast<double>(params.n);
  const double l = std::log(2.0 / config.delta);
  if (params.a > params.b) {
    const double b = params.b;
    return b * n / 4.0 + std::max(config.c_sqrt * std::sqrt(n * b * l), config.c_log * l);
  }
  const double a = params.a;
  return a * n / 4.0 - a / 2.0 + std::max(config.c_sqrt * std::sqrt(n * a * l), config.c_log * l);
}

TestResult gof_test(const Graph& g, const Partition& x0, const SbmParams& params,
                    const GofConfig& config) {
  if (x0.size() != g.num_nodes() || params.n != g.num_nodes()) {
    throw Error(ErrorCode::LengthMismatch, "gof_test: sizes of graph, partition and params differ");
  }
  const double threshold = gof_threshold(params, config);
  const CutCounts c = cut_counts(g, x0);
  TestResult r;
  r.statistic = static_cast<double>(params.a > params.b ? c.across : c.within);
  r.threshold = threshold;
  r.reject = r.statistic > threshold;
  r.add("across", static_cast<double>(c.across));
  r.add("within", static_cast<double>(c.within));
  r.add("a", params.a);
  r.add("b", params.b);
  r.add("snr", snr(params));
  r.add("delta", config.delta);
  return r;
}

}  // namespace sbmtest
