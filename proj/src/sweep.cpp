#include "sbmtest/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sbmtest/error.hpp"
#include "sbmtest/parallel.hpp"
#include "sbmtest/test_result.hpp"

namespace sbmtest {

void write_risk_csv(std::ostream& out, const RiskGrid& grid) {
  out << kRiskCsvHeader << '\n';
  for (const RiskRow& r : grid.rows) {
    out << scheme_name(r.scheme) << ',' << r.n << ',' << format_number(r.a) << ','
        << format_number(r.b) << ',' << format_number(r.alpha) << ',' << format_number(r.snr)
        << ',' << r.s << ',' << r.trials << ',' << format_number(r.fa) << ','
        << format_number(r.md) << ',' << format_number(r.risk()) << ',' << r.seed << '\n';
  }
}

double SweepSpec::base_snr() const {
  if (snr0) return *snr0;
  return 0.75 * std::log(static_cast<double>(n) / 100.0);
}

SweepSpec sweep_spec_from(const SpecFile& file) {
  static const std::set<std::string> known = {
      "n",     "ratio",  "snr0",      "alphas",    "s",        "schemes", "trials",
      "delta", "c_sqrt", "c_log",     "eta",       "kappa",    "two_sided", "max_iters",
      "tol",   "subspace", "threads", "output_dir", "prefix"};
  for (const std::string& k : file.keys()) {
    if (!known.count(k)) throw Error(ErrorCode::Parse, "unknown spec key '" + k + "'");
  }
  SweepSpec spec;
  if (auto v = file.get_size("n")) spec.n = *v;
  if (auto v = file.get_double("ratio")) spec.ratio = *v;
  if (auto v = file.get_double("snr0")) spec.snr0 = *v;
  if (auto v = file.get_doubles("alphas")) spec.alphas = *v;
  if (auto v = file.get_sizes("s")) spec.s_values = *v;
  if (auto v = file.get_strings("schemes")) {
    spec.schemes.clear();
    for (const std::string& name : *v) {
      auto sch = parse_scheme(name);
      if (!sch) throw Error(ErrorCode::Parse, "unknown scheme '" + name + "'");
      spec.schemes.push_back(*sch);
    }
  }
  if (auto v = file.get_size("trials")) spec.trials = *v;
  if (auto v = file.get_double("delta")) spec.config.gof.delta = *v;
  if (auto v = file.get_double("c_sqrt")) spec.config.gof.c_sqrt = *v;
  if (auto v = file.get_double("c_log")) spec.config.gof.c_log = *v;
  if (auto v = file.get_double("eta")) spec.config.tst.eta = *v;
  if (auto v = file.get_double("kappa")) spec.config.tst.kappa = *v;
  if (auto v = file.get_bool("two_sided")) spec.config.tst.two_sided = *v;
  if (auto v = file.get_size("max_iters")) {
    spec.config.recovery.max_iters = *v;
    spec.config.tst.recovery.max_iters = *v;
  }
  if (auto v = file.get_double("tol")) {
    spec.config.recovery.tol = *v;
    spec.config.tst.recovery.tol = *v;
  }
  if (auto v = file.get_size("subspace")) {
    spec.config.recovery.subspace = *v;
    spec.config.tst.recovery.subspace = *v;
  }
  if (auto v = file.get_size("threads")) spec.config.threads = *v;
  if (auto v = file.get_string("output_dir")) spec.output_dir = *v;
  if (auto v = file.get_string("prefix")) spec.prefix = *v;
  if (spec.trials < 1) throw Error(ErrorCode::Config, "spec: trials must be >= 1");
  return spec;
}

std::vector<RiskGrid> run_sweep(const SweepSpec& spec, std::uint64_t top_seed) {
  struct Cell {
    std::size_t grid;
    double alpha;
    std::size_t s;
  };
  std::vector<RiskGrid> grids;
  std::vector<Cell> cells;
  for (std::size_t gi = 0; gi < spec.schemes.size(); ++gi) {
    grids.push_back(RiskGrid{spec.schemes[gi], {}, {}});
    for (double alpha : spec.alphas) {
      for (std::size_t s : spec.s_values) cells.push_back({gi, alpha, s});
    }
  }
  struct CellResult {
    std::optional<RiskRow> row;
    std::string skipped;
  };
  std::vector<CellResult> results(cells.size());
  // Cells are the unit of parallelism; trials inside a cell run serially.
  RiskConfig inner = spec.config;
  inner.threads = 1;
  parallel_for(cells.size(), spec.config.threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    const Scheme scheme = spec.schemes[c.grid];
    const std::uint64_t seed = cell_seed(top_seed, scheme, c.s, c.alpha);
    try {
      const SbmParams params = params_from_snr(spec.n, c.alpha * spec.base_snr(), spec.ratio);
      const RiskEstimate est = estimate_risk(scheme, params, c.s, inner, spec.trials, seed);
      RiskRow row;
      row.scheme = scheme;
      row.n = spec.n;
      row.a = params.a;
      row.b = params.b;
      row.alpha = c.alpha;
      row.snr = snr(params);
      row.s = c.s;
      row.trials = est.trials;
      row.fa = est.fa_rate();
      row.md = est.md_rate();
      row.seed = seed;
      results[i].row = row;
    } catch (const Error& e) {
      results[i].skipped = std::string(scheme_name(scheme)) + " alpha=" + format_number(c.alpha) +
                           " s=" + std::to_string(c.s) + ": " + e.what();
    }
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    RiskGrid& g = grids[cells[i].grid];
    if (results[i].row) {
      g.rows.push_back(*results[i].row);
    } else {
      g.skipped.push_back(results[i].skipped);
    }
  }
  return grids;
}

}  // namespace sbmtest
