#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sbmtest/bounds.hpp"
#include "sbmtest/dataset.hpp"
#include "sbmtest/error.hpp"
#include "sbmtest/gmrf_experiment.hpp"
#include "sbmtest/gof.hpp"
#include "sbmtest/recovery.hpp"
#include "sbmtest/risk.hpp"
#include "sbmtest/rng.hpp"
#include "sbmtest/sbm.hpp"
#include "sbmtest/spec_file.hpp"
#include "sbmtest/sweep.hpp"
#include "sbmtest/test_result.hpp"
#include "sbmtest/tst.hpp"

namespace fs = std::filesystem;
using namespace sbmtest;

namespace {

constexpr int kExitError = 2;

// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

void write_file(const fs::path& path, const std::string& text) { emit(path.string(), text); }

void warn_regime(const SbmParams& p) {
  if (!p.in_sparse_regime()) {
    std::cerr << "warning: a + b = " << format_number(p.a + p.b)
              << " is outside the sparse regime a + b < n/4\n";
  }
}

// Loads one or two integer-id edge lists onto a common node count.
Graph load_graph(const std::string& path, std::size_t n) {
  EdgeList e = load_edge_list(path);
  if (!e.node_names.empty()) {
    throw Error(ErrorCode::Parse, "'" + path + "': named nodes need a labels file; use integer ids");
  }
  if (e.graph.num_nodes() > n) {
    throw Error(ErrorCode::InvalidArgument,
                "'" + path + "' has node ids beyond n = " + std::to_string(n));
  }
  const auto edges = e.graph.edges();
  return Graph::from_sorted_edges(n, std::vector<Edge>(edges.begin(), edges.end()));
}

std::size_t node_count(const std::string& path) { return load_edge_list(path).graph.num_nodes(); }

int finish_test(const TestResult& r, const std::string& out) {
  std::ostringstream text;
  write_key_values(text, r);
  emit(out, text.str());
  if (!out.empty() && out != "-") std::cout << text.str();
  return r.reject ? 1 : 0;
}

std::string bounds_header() {
  return "n,s,a,b,nu,bc,chi2,chi2_overflow,chi2_risk_at_least_quarter,tau,gamma_exact,"
         "gamma_upper,beta_upper,tst_risk_lower";
}

std::string bounds_row(const BoundReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  std::ostringstream s;
  s << r.n << ',' << r.s << ',' << format_number(r.a) << ',' << format_number(r.b) << ','
    << opt(r.nu) << ',' << format_number(r.bc) << ',';
  if (r.chi2) {
    s << (r.chi2->overflow ? std::string("inf") : format_number(r.chi2->value)) << ','
      << (r.chi2->overflow ? 1 : 0) << ',' << (r.chi2->risk_at_least_quarter ? 1 : 0) << ',';
  } else {
    s << ",,,";
  }
  s << format_number(r.tst.tau) << ',' << format_number(r.tst.gamma_exact) << ','
    << format_number(r.tst.gamma_upper) << ',' << opt(r.tst.beta_upper) << ','
    << opt(r.tst.tst_risk_lower);
  return s.str();
}

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<Scheme> out;
  for (const std::string& name : names) {
    auto s = parse_scheme(name);
    if (!s) throw Error(ErrorCode::Config, "unknown scheme '" + name + "'");
    out.push_back(*s);
  }
  return out;
}

void write_grids(const std::vector<RiskGrid>& grids, const fs::path& dir, const std::string& prefix) {
  fs::create_directories(dir);
  for (const RiskGrid& g : grids) {
    std::ostringstream csv;
    write_risk_csv(csv, g);
    const fs::path path = dir / (prefix + std::string(scheme_name(g.scheme)) + ".csv");
    write_file(path, csv.str());
    std::cout << path.string() << '\n';
    for (const std::string& reason : g.skipped) std::cerr << "skipped " << reason << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community change tests for stochastic block models"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Sample an SBM graph and its labels");
  std::size_t sm_n = 0;
  double sm_a = 0.0, sm_b = 0.0;
  std::size_t sm_s = 0;
  std::string sm_perturb = "shift";
  std::uint64_t sm_seed = 0;
  std::string sm_out, sm_labels_out;
  sample->add_option("--n", sm_n, "Node count")->required();
  sample->add_option("--a", sm_a, "Within-community parameter")->required();
  sample->add_option("--b", sm_b, "Across-community parameter")->required();
  sample->add_option("--s", sm_s, "Perturb the balanced partition by s nodes");
  sample->add_option("--perturb", sm_perturb, "shift or random")
      ->check(CLI::IsMember({"shift", "random"}));
  sample->add_option("--seed", sm_seed, "Seed");
  sample->add_option("--out", sm_out, "Edge list output (default stdout)");
  sample->add_option("--labels-out", sm_labels_out, "Labels output");

  // gof / naive-gof
  auto* gof = app.add_subcommand("gof", "Goodness-of-fit test against a partition");
  std::string gf_graph, gf_labels, gf_out;
  std::optional<double> gf_a, gf_b;
  GofConfig gf_config;
  gof->add_option("--graph", gf_graph, "Edge list")->required();
  gof->add_option("--labels", gf_labels, "Hypothesised partition x0")->required();
  gof->add_option("--a", gf_a, "Within parameter (estimated if absent)");
  gof->add_option("--b", gf_b, "Across parameter (estimated if absent)");
  gof->add_option("--delta", gf_config.delta, "Level");
  gof->add_option("--c-sqrt", gf_config.c_sqrt, "Threshold constant on the sqrt term");
  gof->add_option("--c-log", gf_config.c_log, "Threshold constant on the log term");
  gof->add_option("--out", gf_out, "Also write the result here");

  auto* ngof = app.add_subcommand("naive-gof", "Recover-and-compare goodness-of-fit test");
  std::string ng_graph, ng_labels, ng_out;
  std::size_t ng_s = 0;
  RecoverySettings ng_rs = RecoverySettings::dataset();
  ngof->add_option("--graph", ng_graph, "Edge list")->required();
  ngof->add_option("--labels", ng_labels, "Hypothesised partition x0")->required();
  ngof->add_option("--s", ng_s, "Change size")->required();
  ngof->add_option("--tau", ng_rs.tau, "Rank-one regulariser weight");
  ngof->add_option("--max-iters", ng_rs.max_iters, "Orthogonal iteration cap");
  ngof->add_option("--seed", ng_rs.seed, "Seed of the starting block");
  ngof->add_option("--out", ng_out, "Also write the result here");

  // tst / naive-tst
  auto* tst = app.add_subcommand("tst", "Two-sample test");
  std::string ts_graph, ts_other, ts_out;
  std::optional<std::size_t> ts_n;
  std::optional<double> ts_a, ts_b;
  TstConfig ts_config;
  ts_config.recovery = RecoverySettings::dataset();
  std::uint64_t ts_seed = 0;
  tst->add_option("--graph", ts_graph, "Edge list of G")->required();
  tst->add_option("--other", ts_other, "Edge list of H")->required();
  tst->add_option("--n", ts_n, "Node count (default: largest id + 1)");
  tst->add_option("--a", ts_a, "Within parameter");
  tst->add_option("--b", ts_b, "Across parameter");
  tst->add_option("--eta", ts_config.eta, "Subsampling rate");
  tst->add_option("--kappa", ts_config.kappa, "Threshold multiplier");
  tst->add_flag("--two-sided", ts_config.two_sided, "Absolute difference statistic");
  tst->add_option("--tau", ts_config.recovery.tau, "Rank-one regulariser weight");
  tst->add_option("--seed", ts_seed, "Seed");
  tst->add_option("--out", ts_out, "Also write the result here");

  auto* ntst = app.add_subcommand("naive-tst", "Recover-and-compare two-sample test");
  std::string nt_graph, nt_other, nt_out;
  std::optional<std::size_t> nt_n;
  std::size_t nt_s = 0;
  RecoverySettings nt_rs = RecoverySettings::dataset();
  ntst->add_option("--graph", nt_graph, "Edge list of G")->required();
  ntst->add_option("--other", nt_other, "Edge list of H")->required();
  ntst->add_option("--n", nt_n, "Node count (default: largest id + 1)");
  ntst->add_option("--s", nt_s, "Change size")->required();
  ntst->add_option("--tau", nt_rs.tau, "Rank-one regulariser weight");
  ntst->add_option("--max-iters", nt_rs.max_iters, "Orthogonal iteration cap");
  ntst->add_option("--seed", nt_rs.seed, "Seed of the starting block");
  ntst->add_option("--out", nt_out, "Also write the result here");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Risk grid sweep from a spec file");
  std::string sw_spec;
  std::uint64_t sw_seed = 0;
  std::optional<std::string> sw_dir;
  std::optional<std::size_t> sw_threads;
  sweep->add_option("--spec", sw_spec, "Spec file")->required();
  sweep->add_option("--seed", sw_seed, "Top-level seed");
  sweep->add_option("--output-dir", sw_dir, "Override output_dir");
  sweep->add_option("--threads", sw_threads, "Worker threads (0: all cores)");

  // dataset
  auto* dataset = app.add_subcommand("dataset", "Real-network protocol with sparsification");
  std::string ds_edges, ds_labels, ds_dir = ".", ds_prefix = "dataset_";
  std::vector<double> ds_rhos{1.0};
  std::vector<std::size_t> ds_s;
  std::vector<std::string> ds_schemes{"gof", "naive-gof", "tst", "naive-tst"};
  std::size_t ds_trials = 100;
  std::size_t ds_threads = 0;
  std::uint64_t ds_seed = 0;
  bool ds_no_lcc = false;
  double ds_delta = 0.05;
  dataset->add_option("--edges", ds_edges, "Edge list")->required();
  dataset->add_option("--labels", ds_labels, "Ground-truth labels")->required();
  dataset->add_option("--rho", ds_rhos, "Sparsification rates");
  dataset->add_option("--s", ds_s, "Change sizes");
  dataset->add_option("--schemes", ds_schemes, "Schemes");
  dataset->add_option("--trials", ds_trials, "Trials per cell");
  dataset->add_option("--delta", ds_delta, "GoF level");
  dataset->add_option("--threads", ds_threads, "Worker threads (0: all cores)");
  dataset->add_option("--seed", ds_seed, "Top-level seed");
  dataset->add_option("--output-dir", ds_dir, "Output directory");
  dataset->add_option("--prefix", ds_prefix, "Output file prefix");
  dataset->add_flag("--no-lcc", ds_no_lcc, "Keep the whole graph");

  // gmrf
  auto* gmrf = app.add_subcommand("gmrf", "GMRF two-sample experiment with cross-validated risk");
  GmrfExperimentConfig gm;
  std::optional<double> gm_snr;
  std::optional<double> gm_gamma;
  std::uint64_t gm_seed = 0;
  std::string gm_out, gm_values;
  gmrf->add_option("--n", gm.n, "Node count");
  gmrf->add_option("--snr", gm_snr, "SBM SNR (default 30 * (10/11) log(n/100))");
  gmrf->add_option("--ratio", gm.ratio, "b / a");
  gmrf->add_option("--gamma", gm_gamma, "Coupling (default 3 / (a + b))");
  gmrf->add_option("--s", gm.s, "Change size");
  gmrf->add_option("--t", gm.samples, "Samples per GMRF");
  gmrf->add_option("--trials", gm.trials, "Draws of each statistic");
  gmrf->add_option("--folds", gm.folds, "Cross-validation folds");
  gmrf->add_option("--repeats", gm.repeats, "Cross-validation repeats");
  gmrf->add_option("--max-iters", gm.recovery.max_iters, "Orthogonal iteration cap");
  gmrf->add_option("--threads", gm.threads, "Worker threads (0: all cores)");
  gmrf->add_option("--seed", gm_seed, "Seed");
  gmrf->add_option("--out", gm_out, "Also write the report here");
  gmrf->add_option("--values-out", gm_values, "Per-trial statistics CSV");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form converse bounds as one CSV row");
  std::size_t bd_n = 0, bd_s = 0;
  double bd_a = 0.0, bd_b = 0.0;
  bool bd_header = false;
  bounds->add_option("--n", bd_n, "Node count")->required();
  bounds->add_option("--a", bd_a, "Within parameter")->required();
  bounds->add_option("--b", bd_b, "Across parameter")->required();
  bounds->add_option("--s", bd_s, "Change size")->required();
  bounds->add_flag("--header", bd_header, "Print the column header first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (sample->parsed()) {
      const SbmParams params{sm_n, sm_a, sm_b};
      params.validate();
      warn_regime(params);
      Partition x = Partition::halves(sm_n);
      if (sm_s > 0) {
        const PerturbMode mode = sm_perturb == "shift" ? PerturbMode::Shift
                                                       : PerturbMode::RandomRelabel;
        x = perturb_partition(x, sm_s, mode, derive_seed(sm_seed, 2));
      }
      const Graph g = sample_sbm(params, x, derive_seed(sm_seed, 1));
      std::ostringstream edges;
      edges << "# n=" << sm_n << '\n';
      write_edge_list(edges, g);
      emit(sm_out, edges.str());
      if (!sm_labels_out.empty()) {
        std::ostringstream labels;
        write_labels(labels, x);
        emit(sm_labels_out, labels.str());
      }
      return 0;
    }

    if (gof->parsed()) {
      const LabeledGraph lg = load_labeled_graph(gf_graph, gf_labels);
      SbmParams params;
      const bool estimated = !(gf_a && gf_b);
      if (estimated) {
        if (gf_a || gf_b) throw Error(ErrorCode::Config, "gof: give both --a and --b or neither");
        params = estimate_params(lg);
      } else {
        params = SbmParams{lg.graph.num_nodes(), *gf_a, *gf_b};
      }
      warn_regime(params);
      TestResult r = gof_test(lg.graph, lg.labels, params, gf_config);
      r.add("params_estimated", estimated ? 1.0 : 0.0);
      return finish_test(r, gf_out);
    }

    if (ngof->parsed()) {
      const LabeledGraph lg = load_labeled_graph(ng_graph, ng_labels);
      return finish_test(naive_gof(lg.graph, lg.labels, ng_s, ng_rs), ng_out);
    }

    if (tst->parsed()) {
      const std::size_t n = ts_n ? *ts_n : std::max(node_count(ts_graph), node_count(ts_other));
      const Graph g = load_graph(ts_graph, n);
      const Graph h = load_graph(ts_other, n);
      std::optional<SbmParams> params;
      if (ts_a || ts_b) {
        if (!(ts_a && ts_b)) throw Error(ErrorCode::Config, "tst: give both --a and --b or neither");
        params = SbmParams{n, *ts_a, *ts_b};
        warn_regime(*params);
      }
      return finish_test(two_sample_test(g, h, params, ts_config, ts_seed), ts_out);
    }

    if (ntst->parsed()) {
      const std::size_t n = nt_n ? *nt_n : std::max(node_count(nt_graph), node_count(nt_other));
      const Graph g = load_graph(nt_graph, n);
      const Graph h = load_graph(nt_other, n);
      return finish_test(naive_tst(g, h, nt_s, nt_rs), nt_out);
    }

    if (sweep->parsed()) {
      SweepSpec spec = sweep_spec_from(SpecFile::load(sw_spec));
      if (sw_dir) spec.output_dir = *sw_dir;
      if (sw_threads) spec.config.threads = *sw_threads;
      for (double alpha : spec.alphas) {
        const SbmParams p = params_from_snr(spec.n, alpha * spec.base_snr(), spec.ratio);
        if (!p.in_sparse_regime()) {
          warn_regime(p);
          break;
        }
      }
      write_grids(run_sweep(spec, sw_seed), spec.output_dir, spec.prefix);
      return 0;
    }

    if (dataset->parsed()) {
      LabeledGraph data = load_labeled_graph(ds_edges, ds_labels);
      const std::size_t raw_nodes = data.graph.num_nodes();
      if (!ds_no_lcc) data = largest_connected_component(data);
      DatasetConfig config;
      config.rhos = ds_rhos;
      config.s_values = ds_s;
      config.schemes = parse_schemes(ds_schemes);
      config.trials = ds_trials;
      config.config.gof.delta = ds_delta;
      config.config.threads = ds_threads;
      const DatasetSummary sum = summarize_dataset(data, config.config.recovery);
      warn_regime(sum.estimated);
      std::ostringstream text;
      text << "raw_nodes=" << raw_nodes << '\n'
           << "nodes=" << sum.nodes << '\n'
           << "edges=" << sum.edges << '\n'
           << "community_pos=" << sum.community_pos << '\n'
           << "community_neg=" << sum.community_neg << '\n'
           << "a_hat=" << format_number(sum.estimated.a) << '\n'
           << "b_hat=" << format_number(sum.estimated.b) << '\n'
           << "snr_hat=" << format_number(snr(sum.estimated)) << '\n'
           << "spectral_errors=" << sum.spectral_errors << '\n';
      const fs::path dir(ds_dir);
      fs::create_directories(dir);
      write_file(dir / (ds_prefix + "summary.txt"), text.str());
      std::cout << text.str();
      std::ostringstream edges, labels;
      write_edge_list(edges, data.graph);
      write_labels(labels, data.labels);
      write_file(dir / (ds_prefix + "edges.txt"), edges.str());
      write_file(dir / (ds_prefix + "labels.txt"), labels.str());
      if (!data.node_names.empty()) {
        std::ostringstream names;
        for (std::size_t i = 0; i < data.node_names.size(); ++i) {
          names << i << " \"" << data.node_names[i] << "\"\n";
        }
        write_file(dir / (ds_prefix + "nodes.txt"), names.str());
      }
      write_grids(run_dataset_protocol(data, config, ds_seed), dir, ds_prefix);
      return 0;
    }

    if (gmrf->parsed()) {
      gm.snr = gm_snr;
      gm.gamma = gm_gamma;
      const GmrfExperimentResult r = run_gmrf_experiment(gm, gm_seed);
      std::ostringstream text;
      write_gmrf_report(text, r);
      emit(gm_out, text.str());
      if (!gm_out.empty() && gm_out != "-") std::cout << text.str();
      if (!gm_values.empty()) {
        std::ostringstream csv;
        csv << "trial,null,alt\n";
        for (std::size_t i = 0; i < r.null_values.size(); ++i) {
          csv << i << ',' << format_number(r.null_values[i]) << ','
              << format_number(r.alt_values[i]) << '\n';
        }
        emit(gm_values, csv.str());
      }
      return 0;
    }

    if (bounds->parsed()) {
      const BoundReport r = bound_report(bd_n, bd_s, bd_a, bd_b);
      if (bd_header) std::cout << bounds_header() << '\n';
      std::cout << bounds_row(r) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
