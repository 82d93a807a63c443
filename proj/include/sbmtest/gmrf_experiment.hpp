#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "sbmtest/lda.hpp"
#include "sbmtest/recovery.hpp"
#include "sbmtest/sbm.hpp"

namespace sbmtest {

struct GmrfExperimentConfig {
  std::size_t n = 1000;
  std::optional<double> snr;    // default 30 * (10/11) log(n/100)
  double ratio = 0.1;           // b / a
  std::optional<double> gamma;  // default 3 / (a + b)
  std::size_t s = 200;
  std::size_t samples = 400;    // t
  std::size_t trials = 100;     // M draws of each statistic
  std::size_t folds = 10;
  std::size_t repeats = 10;
  std::size_t max_resamples = 10;  // attempts at a positive definite precision
  std::size_t threads = 0;
  RecoverySettings recovery;

  GmrfExperimentConfig() { recovery.max_iters = 100; }

  double resolved_snr() const;
};

struct GmrfExperimentResult {
  SbmParams params;
  double gamma = 0.0;
  std::vector<double> null_values;  // T(C) - T(C')
  std::vector<double> alt_values;   // T(C) - T(D)
  CvRisk proposed;                  // LDA threshold, cross-validated
  double naive_fa = 0.0;            // d(x_hat(C), x_hat(C')) >= s/2
  double naive_md = 0.0;            // d(x_hat(C), x_hat(D)) < s/2
  std::size_t resamples = 0;        // graphs redrawn for lack of positive definiteness

  double naive_risk() const { return naive_fa + naive_md; }
};

// G, G' ~ SBM(x) and H ~ SBM(y) with y the shift perturbation of x by s;
// t samples from each GMRF with precision I + gamma A; statistics on the
// sample correlation matrices with x_hat recovered from C.
GmrfExperimentResult run_gmrf_experiment(const GmrfExperimentConfig& config, std::uint64_t seed);

void write_gmrf_report(std::ostream& out, const GmrfExperimentResult& result);

}  // namespace sbmtest
