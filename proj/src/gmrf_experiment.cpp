#include "sbmtest/gmrf_experiment.hpp"

#include <cmath>

#include "sbmtest/error.hpp"
#include "sbmtest/gmrf.hpp"
#include "sbmtest/parallel.hpp"
#include "sbmtest/rng.hpp"
#include "sbmtest/test_result.hpp"

namespace sbmtest {

double GmrfExperimentConfig::resolved_snr() const {
  if (snr) return *snr;
  return 30.0 * (10.0 / 11.0) * std::log(static_cast<double>(n) / 100.0);
}

namespace {

GmrfModel draw_model(const SbmParams& params, const Partition& x, double gamma,
                     std::size_t max_attempts, std::uint64_t seed, std::size_t& resamples) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    const Graph g = sample_sbm(params, x, derive_seed(seed, attempt));
    try {
      return build_precision(g, gamma);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotPositiveDefinite) throw;
      ++resamples;
    }
  }
  throw Error(ErrorCode::NotPositiveDefinite,
              "gmrf: no positive definite precision after " + std::to_string(max_attempts) +
                  " draws");
}

struct Trial {
  double null_value = 0.0;
  double alt_value = 0.0;
  bool false_alarm = false;
  bool missed = false;
  std::size_t resamples = 0;
};

}  // namespace

GmrfExperimentResult run_gmrf_experiment(const GmrfExperimentConfig& config, std::uint64_t seed) {
  if (config.trials < config.folds || config.folds < 2) {
    throw Error(ErrorCode::Config, "gmrf: need folds >= 2 and trials >= folds");
  }
  if (config.samples < 2) throw Error(ErrorCode::Config, "gmrf: need at least 2 samples");
  if (config.s < 1 || 2 * config.s > config.n) {
    throw Error(ErrorCode::OutOfRange, "gmrf: s must satisfy 1 <= s <= n/2");
  }
  if (config.max_resamples < 1) throw Error(ErrorCode::Config, "gmrf: max_resamples must be >= 1");
  GmrfExperimentResult result;
  result.params = params_from_snr(config.n, config.resolved_snr(), config.ratio);
  result.gamma = config.gamma ? *config.gamma : 3.0 / (result.params.a + result.params.b);
  if (!(result.gamma >= 0.0)) throw Error(ErrorCode::Config, "gmrf: gamma must be >= 0");

  const Partition x = Partition::halves(config.n);
  const Partition y = perturb_partition(x, config.s, PerturbMode::Shift, 0);
  std::vector<Trial> trials(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t i) {
    const std::uint64_t ts = derive_seed(seed, i);
    Trial& tr = trials[i];
    const GmrfModel mg = draw_model(result.params, x, result.gamma, config.max_resamples,
                                    derive_seed(ts, 1), tr.resamples);
    const GmrfModel mg2 = draw_model(result.params, x, result.gamma, config.max_resamples,
                                     derive_seed(ts, 3), tr.resamples);
    const GmrfModel mh = draw_model(result.params, y, result.gamma, config.max_resamples,
                                    derive_seed(ts, 2), tr.resamples);
    const DenseMatrix c = correlation_matrix(sample_gmrf(mg, config.samples, derive_seed(ts, 11)));
    const DenseMatrix c2 =
        correlation_matrix(sample_gmrf(mg2, config.samples, derive_seed(ts, 13)));
    const DenseMatrix d = correlation_matrix(sample_gmrf(mh, config.samples, derive_seed(ts, 12)));

    RecoverySettings rs = config.recovery;
    rs.seed = derive_seed(ts, 4);
    const SpectralPartition est = spectral_partition(c, rs);
    tr.null_value = gmrf_two_sample(c, est, c2).statistic;
    tr.alt_value = gmrf_two_sample(c, est, d).statistic;

    const Partition x2 = spectral_partition(c2, rs).labels;
    const Partition xd = spectral_partition(d, rs).labels;
    tr.false_alarm = 2 * distortion(est.labels, x2) >= config.s;
    tr.missed = 2 * distortion(est.labels, xd) < config.s;
  });

  std::size_t fa = 0;
  std::size_t md = 0;
  for (const Trial& tr : trials) {
    result.null_values.push_back(tr.null_value);
    result.alt_values.push_back(tr.alt_value);
    fa += tr.false_alarm;
    md += tr.missed;
    result.resamples += tr.resamples;
  }
  const double m = static_cast<double>(config.trials);
  result.naive_fa = static_cast<double>(fa) / m;
  result.naive_md = static_cast<double>(md) / m;
  result.proposed = cross_validated_risk(result.null_values, result.alt_values, config.folds,
                                         config.repeats, derive_seed(seed, 0xcf));
  return result;
}

void write_gmrf_report(std::ostream& out, const GmrfExperimentResult& r) {
  out << "n=" << r.params.n << '\n'
      << "a=" << format_number(r.params.a) << '\n'
      << "b=" << format_number(r.params.b) << '\n'
      << "gamma=" << format_number(r.gamma) << '\n'
      << "trials=" << r.null_values.size() << '\n'
      << "resamples=" << r.resamples << '\n'
      << "proposed_fa=" << format_number(r.proposed.fa) << '\n'
      << "proposed_md=" << format_number(r.proposed.md) << '\n'
      << "proposed_risk=" << format_number(r.proposed.risk) << '\n'
      << "naive_fa=" << format_number(r.naive_fa) << '\n'
      << "naive_md=" << format_number(r.naive_md) << '\n'
      << "naive_risk=" << format_number(r.naive_risk()) << '\n';
}

}  // namespace sbmtest
