#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sbmtest/risk.hpp"
#include "sbmtest/spec_file.hpp"

namespace sbmtest {

struct RiskRow {
  Scheme scheme = Scheme::ProposedGof;
  std::size_t n = 0;
  double a = 0.0;
  double b = 0.0;
  double alpha = 0.0;  // SNR multiplier (sparsification rate for datasets)
  double snr = 0.0;
  std::size_t s = 0;
  std::size_t trials = 0;
  double fa = 0.0;
  double md = 0.0;
  std::uint64_t seed = 0;

  double risk() const { return fa + md; }
};

struct RiskGrid {
  Scheme scheme = Scheme::ProposedGof;
  std::vector<RiskRow> rows;
  std::vector<std::string> skipped;  // one reason per skipped cell
};

inline constexpr const char* kRiskCsvHeader = "scheme,n,a,b,alpha,snr,s,M,fa,md,risk,seed";

void write_risk_csv(std::ostream& out, const RiskGrid& grid);

struct SweepSpec {
  std::size_t n = 1000;
  double ratio = 1.0 / 3.0;        // b / a
  std::optional<double> snr0;      // default (3/4) log(n/100)
  std::vector<double> alphas;
  std::vector<std::size_t> s_values;
  std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
  std::size_t trials = 100;
  RiskConfig config;
  std::string output_dir = ".";
  std::string prefix = "risk_";

  double base_snr() const;
};

// Recognised keys: n, ratio, snr0, alphas, s, schemes, trials, delta,
// c_sqrt, c_log, eta, kappa, two_sided, max_iters, tol, subspace, threads,
// output_dir, prefix. Unknown keys are errors.
SweepSpec sweep_spec_from(const SpecFile& file);

// Cells run in parallel; rows are in (alpha, s) order with alpha outermost.
std::vector<RiskGrid> run_sweep(const SweepSpec& spec, std::uint64_t top_seed);

}  // namespace sbmtest
