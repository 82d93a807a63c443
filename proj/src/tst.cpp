#include "sbmtest/tst.hpp"

#include <cmath>

#include "sbmtest/cut_statistics.hpp"
#include "sbmtest/error.hpp"
#include "sbmtest/rng.hpp"

namespace sbmtest {

void TstConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidArgument, "tst: eta must lie in (0, 1)");
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "tst: kappa must be > 0");
  recovery.validate();
}

TstReference prepare_tst_reference(const Graph& g, const TstConfig& config, std::uint64_t seed) {
  config.validate();
  EdgeSplit split = subsample_edges(g, config.eta, derive_seed(seed, 1));
  RecoverySettings rs = config.recovery;
  rs.seed = derive_seed(seed, 2);
  TstReference ref;
  ref.n = g.num_nodes();
  ref.edges_g = g.num_edges();
  ref.estimate = spectral_partition(split.first, rs);
  ref.t_first = t_statistic(split.first, ref.estimate.labels);
  ref.t_held_out = t_statistic(split.rest, ref.estimate.labels);
  ref.held_out = std::move(split.rest);
  return ref;
}

TestResult evaluate_tst(const TstReference& ref, const Graph& h,
                        const std::optional<SbmParams>& params, const TstConfig& config) {
  config.validate();
  if (h.num_nodes() != ref.n) {
    throw Error(ErrorCode::LengthMismatch, "two_sample_test: graphs differ in node count");
  }
  const double n = static_cast<double>(ref.n);
  double scale;  // n(a+b)
  double orientation;
  if (params) {
    if (params->n != ref.n) {
      throw Error(ErrorCode::LengthMismatch, "two_sample_test: params.n differs from graph size");
    }
    if (params->a + params->b <= 0.0) {
      throw Error(ErrorCode::UndefinedSnr, "two_sample_test: a + b = 0");
    }
    scale = n * (params->a + params->b);
    orientation = params->a >= params->b ? 1.0 : -1.0;
  } else {
    scale = 2.0 * static_cast<double>(ref.edges_g + h.num_edges());
    orientation = ref.t_first >= 0 ? 1.0 : -1.0;
  }
  const std::int64_t t_h = t_statistic(h, ref.estimate.labels);
  const double diff = static_cast<double>(ref.t_held_out) / (1.0 - config.eta) -
                      static_cast<double>(t_h);
  TestResult r;
  r.statistic = config.two_sided ? std::abs(diff) : orientation * diff;
  r.threshold = n > 0 ? config.kappa * std::sqrt(scale * std::log(6.0 * n)) : 0.0;
  r.reject = r.statistic > r.threshold;
  r.add("t_held_out", static_cast<double>(ref.t_held_out));
  r.add("t_other", static_cast<double>(t_h));
  r.add("t_first", static_cast<double>(ref.t_first));
  r.add("orientation", orientation);
  r.add("n_a_plus_b", scale);
  r.add("params_estimated", params ? 0.0 : 1.0);
  r.add("eta", config.eta);
  r.add("delta", config.delta);
  r.add("recovery_converged", ref.estimate.converged ? 1.0 : 0.0);
  return r;
}

TestResult two_sample_test(const Graph& g, const Graph& h, const std::optional<SbmParams>& params,
                           const TstConfig& config, std::uint64_t seed) {
  if (g.num_nodes() != h.num_nodes()) {
    throw Error(ErrorCode::LengthMismatch, "two_sample_test: graphs differ in node count");
  }
  return evaluate_tst(prepare_tst_reference(g, config, seed), h, params, config);
}

double expected_t_gap(std::size_t n_nodes, std::size_t s_changed, std::size_t k_errors, double a,
                      double b) {
  if (n_nodes < 2) throw Error(ErrorCode::InvalidArgument, "expected_t_gap: n must be >= 2");
  if (s_changed > n_nodes || k_errors > n_nodes) {
    throw Error(ErrorCode::OutOfRange, "expected_t_gap: s and k must not exceed n");
  }
  const double n = static_cast<double>(n_nodes);
  const double s = static_cast<double>(s_changed);
  const double k = static_cast<double>(k_errors);
  const double frac = 1.0 - 2.0 * k / n;
  return (a - b) / n * s * (n - s) * (frac * frac - 4.0 * k * (n - k) / (n * n * (n - 1.0)));
}

}  // namespace sbmtest
