#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "sbmtest/gof.hpp"
#include "sbmtest/recovery.hpp"
#include "sbmtest/sbm.hpp"
#include "sbmtest/tst.hpp"

namespace sbmtest {

enum class Scheme { ProposedGof, NaiveGof, ProposedTst, NaiveTst };

inline constexpr Scheme kAllSchemes[] = {Scheme::ProposedGof, Scheme::NaiveGof,
                                         Scheme::ProposedTst, Scheme::NaiveTst};

std::string_view scheme_name(Scheme scheme);  // gof, naive-gof, tst, naive-tst
std::optional<Scheme> parse_scheme(std::string_view name);

struct RiskConfig {
  GofConfig gof;
  TstConfig tst;               // tst.recovery is used by the proposed TST
  RecoverySettings recovery;   // used by the naive schemes
  bool synthetic_tau = true;   // replace both taus by 1/(10n)
  std::size_t threads = 0;     // 0: hardware concurrency
};

struct RiskEstimate {
  std::size_t trials = 0;
  std::size_t false_alarms = 0;
  std::size_t missed_detections = 0;

  double fa_rate() const;
  double md_rate() const;
  double risk() const { return fa_rate() + md_rate(); }
};

// Seed of one (scheme, s, alpha) cell; trial t uses derive_seed(cell, t).
std::uint64_t cell_seed(std::uint64_t top_seed, Scheme scheme, std::size_t s, double alpha);

// Null x = halves(n); alternate y = shift perturbation of x by s.
// GoF: FA when H0 is rejected on G ~ SBM(x), MD when accepted on H ~ SBM(y),
// both against x0 = x. TST: G, G' ~ SBM(x), H ~ SBM(y); FA on (G, G'),
// MD on (G, H), sharing the split and estimate of G.
RiskEstimate estimate_risk(Scheme scheme, const SbmParams& params, std::size_t s,
                           const RiskConfig& config, std::size_t trials, std::uint64_t seed);

}  // namespace sbmtest
