#include "sbmtest/risk.hpp"

#include <bit>
#include <vector>

#include "sbmtest/error.hpp"
#include "sbmtest/parallel.hpp"
#include "sbmtest/rng.hpp"

namespace sbmtest {

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::ProposedGof: return "gof";
    case Scheme::NaiveGof: return "naive-gof";
    case Scheme::ProposedTst: return "tst";
    case Scheme::NaiveTst: return "naive-tst";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

double RiskEstimate::fa_rate() const {
  return trials ? static_cast<double>(false_alarms) / static_cast<double>(trials) : 0.0;
}

double RiskEstimate::md_rate() const {
  return trials ? static_cast<double>(missed_detections) / static_cast<double>(trials) : 0.0;
}

std::uint64_t cell_seed(std::uint64_t top_seed, Scheme scheme, std::size_t s, double alpha) {
  return derive_seed(top_seed, static_cast<std::uint64_t>(scheme), static_cast<std::uint64_t>(s),
                     std::bit_cast<std::uint64_t>(alpha));
}

namespace {

struct TrialOutcome {
  bool false_alarm = false;
  bool missed = false;
};

TrialOutcome run_trial(Scheme scheme, const SbmParams& params, const Partition& x,
                       const Partition& y, std::size_t s, const RiskConfig& config,
                       std::uint64_t seed) {
  TrialOutcome out;
  const Graph g = sample_sbm(params, x, derive_seed(seed, 1));
  switch (scheme) {
    case Scheme::ProposedGof: {
      const Graph h = sample_sbm(params, y, derive_seed(seed, 2));
      out.false_alarm = gof_test(g, x, params, config.gof).reject;
      out.missed = !gof_test(h, x, params, config.gof).reject;
      break;
    }
    case Scheme::NaiveGof: {
      const Graph h = sample_sbm(params, y, derive_seed(seed, 2));
      RecoverySettings rs = config.recovery;
      rs.seed = derive_seed(seed, 4);
      out.false_alarm = naive_gof(g, x, s, rs).reject;
      out.missed = !naive_gof(h, x, s, rs).reject;
      break;
    }
    case Scheme::ProposedTst: {
      const Graph g2 = sample_sbm(params, x, derive_seed(seed, 3));
      const Graph h = sample_sbm(params, y, derive_seed(seed, 2));
      const TstReference ref = prepare_tst_reference(g, config.tst, derive_seed(seed, 5));
      out.false_alarm = evaluate_tst(ref, g2, params, config.tst).reject;
      out.missed = !evaluate_tst(ref, h, params, config.tst).reject;
      break;
    }
    case Scheme::NaiveTst: {
      const Graph g2 = sample_sbm(params, x, derive_seed(seed, 3));
      const Graph h = sample_sbm(params, y, derive_seed(seed, 2));
      RecoverySettings rs = config.recovery;
      rs.seed = derive_seed(seed, 4);
      const Partition xg = spectral_partition(g, rs).labels;
      const Partition xg2 = spectral_partition(g2, rs).labels;
      const Partition xh = spectral_partition(h, rs).labels;
      out.false_alarm = 2 * distortion(xg, xg2) >= s;
      out.missed = 2 * distortion(xg, xh) < s;
      break;
    }
  }
  return out;
}

}  // namespace

RiskEstimate estimate_risk(Scheme scheme, const SbmParams& params, std::size_t s,
                           const RiskConfig& config, std::size_t trials, std::uint64_t seed) {
  params.validate();
  if (s < 1 || 2 * s > params.n) {
    throw Error(ErrorCode::OutOfRange, "estimate_risk: s must satisfy 1 <= s <= n/2");
  }
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "estimate_risk: need at least one trial");
  if (scheme == Scheme::ProposedGof && params.a == params.b) {
    throw Error(ErrorCode::Config, "estimate_risk: proposed GoF needs a != b");
  }
  RiskConfig cfg = config;
  if (cfg.synthetic_tau) {
    const double tau = RecoverySettings::synthetic(params.n).tau;
    cfg.tst.recovery.tau = tau;
    cfg.recovery.tau = tau;
  }
  const Partition x = Partition::halves(params.n);
  const Partition y = perturb_partition(x, s, PerturbMode::Shift, 0);
  std::vector<TrialOutcome> outcomes(trials);
  parallel_for(trials, cfg.threads, [&](std::size_t t) {
    outcomes[t] = run_trial(scheme, params, x, y, s, cfg, derive_seed(seed, t));
  });
  RiskEstimate est;
  est.trials = trials;
  for (const TrialOutcome& o : outcomes) {
    est.false_alarms += o.false_alarm;
    est.missed_detections += o.missed;
  }
  return est;
}

}  // namespace sbmtest
