#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "sbmtest/dataset.hpp"
#include "sbmtest/error.hpp"
#include "sbmtest/risk.hpp"
#include "sbmtest/spec_file.hpp"
#include "sbmtest/sweep.hpp"
#include "sbmtest/test_result.hpp"

using namespace sbmtest;

namespace {

EdgeList edges_from(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

Partition labels_from(const std::string& text, const EdgeList& e) {
  std::istringstream in(text);
  return parse_labels(in, e);
}

SweepSpec small_spec() {
  SweepSpec spec;
  spec.n = 200;
  spec.alphas = {2.0, 6.0, 10.0};
  spec.s_values = {10, 40, 80};
  spec.trials = 10;
  return spec;
}

}  // namespace

TEST(SpecFile, ParsesScalarsArraysAndComments) {
  const SpecFile f = SpecFile::parse(
      "# grid\n"
      "n = 1000\n"
      "alphas = [1, 2.5, 10]   # multipliers\n"
      "schemes = [gof, \"naive-tst\"]\n"
      "two_sided = false\n"
      "prefix = \"a # b\"\n");
  EXPECT_EQ(f.get_size("n"), 1000u);
  EXPECT_EQ(*f.get_doubles("alphas"), (std::vector<double>{1, 2.5, 10}));
  EXPECT_EQ(*f.get_strings("schemes"), (std::vector<std::string>{"gof", "naive-tst"}));
  EXPECT_EQ(f.get_bool("two_sided"), false);
  EXPECT_EQ(f.get_string("prefix"), "a # b");
  EXPECT_FALSE(f.has("missing"));
}

TEST(SpecFile, RejectsMalformedInput) {
  EXPECT_THROW(SpecFile::parse("n 1000\n"), Error);
  EXPECT_THROW(SpecFile::parse("n = 1\nn = 2\n"), Error);
  EXPECT_THROW(SpecFile::parse("a = [1, 2\n"), Error);
  EXPECT_THROW(SpecFile::parse("a = \"x\n"), Error);
  EXPECT_THROW(SpecFile::parse("n = abc\n").get_size("n"), Error);
  EXPECT_THROW(sweep_spec_from(SpecFile::parse("bogus = 1\n")), Error);
  EXPECT_THROW(sweep_spec_from(SpecFile::parse("schemes = [nope]\n")), Error);
}

TEST(SpecFile, SweepSpecDefaults) {
  const SweepSpec spec = sweep_spec_from(SpecFile::parse("alphas = [1]\ns = [5]\n"));
  EXPECT_EQ(spec.n, 1000u);
  EXPECT_DOUBLE_EQ(spec.base_snr(), 0.75 * std::log(10.0));
  EXPECT_EQ(spec.schemes.size(), 4u);
  EXPECT_EQ(spec.trials, 100u);
}

TEST(Risk, SchemeNamesRoundTrip) {
  for (Scheme s : kAllSchemes) EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  EXPECT_FALSE(parse_scheme("other").has_value());
}

TEST(Risk, RejectsInvalidCells) {
  const SbmParams p{100, 10, 5};
  RiskConfig cfg;
  EXPECT_THROW(estimate_risk(Scheme::ProposedGof, p, 0, cfg, 10, 1), Error);
  EXPECT_THROW(estimate_risk(Scheme::ProposedGof, p, 51, cfg, 10, 1), Error);
  EXPECT_THROW(estimate_risk(Scheme::ProposedGof, p, 5, cfg, 0, 1), Error);
  EXPECT_THROW(estimate_risk(Scheme::ProposedGof, SbmParams{100, 5, 5}, 5, cfg, 10, 1), Error);
}

TEST(Risk, ThreadCountDoesNotChangeResults) {
  const SbmParams p{300, 20, 5};
  for (Scheme s : kAllSchemes) {
    RiskConfig one;
    one.threads = 1;
    RiskConfig many;
    many.threads = 4;
    const RiskEstimate a = estimate_risk(s, p, 40, one, 12, 99);
    const RiskEstimate b = estimate_risk(s, p, 40, many, 12, 99);
    EXPECT_EQ(a.false_alarms, b.false_alarms) << scheme_name(s);
    EXPECT_EQ(a.missed_detections, b.missed_detections) << scheme_name(s);
  }
}

TEST(Risk, CellSeedsAreDistinct) {
  EXPECT_NE(cell_seed(1, Scheme::ProposedGof, 10, 2.0), cell_seed(1, Scheme::NaiveGof, 10, 2.0));
  EXPECT_NE(cell_seed(1, Scheme::ProposedGof, 10, 2.0), cell_seed(1, Scheme::ProposedGof, 11, 2.0));
  EXPECT_NE(cell_seed(1, Scheme::ProposedGof, 10, 2.0), cell_seed(1, Scheme::ProposedGof, 10, 3.0));
  EXPECT_NE(cell_seed(1, Scheme::ProposedGof, 10, 2.0), cell_seed(2, Scheme::ProposedGof, 10, 2.0));
}

TEST(Sweep, GridCsvContract) {
  SweepSpec spec = small_spec();
  const auto grids = run_sweep(spec, 7);
  ASSERT_EQ(grids.size(), 4u);
  for (const RiskGrid& g : grids) {
    ASSERT_EQ(g.rows.size(), 9u);
    EXPECT_TRUE(g.skipped.empty());
    // alpha outermost, s innermost.
    EXPECT_EQ(g.rows[0].alpha, 2.0);
    EXPECT_EQ(g.rows[1].s, 40u);
    EXPECT_EQ(g.rows[3].alpha, 6.0);
    std::ostringstream csv;
    write_risk_csv(csv, g);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "scheme,n,a,b,alpha,snr,s,M,fa,md,risk,seed");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
      ++rows;
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      ASSERT_EQ(cells.size(), 12u);
      EXPECT_EQ(cells[0], scheme_name(g.scheme));
      const double fa = std::stod(cells[8]);
      const double md = std::stod(cells[9]);
      const double risk = std::stod(cells[10]);
      EXPECT_EQ(risk, fa + md);
      EXPECT_TRUE(std::isfinite(risk));
      EXPECT_GE(risk, 0.0);
      EXPECT_LE(risk, 2.0);
    }
    EXPECT_EQ(rows, 9u);
    EXPECT_EQ(csv.str().find('\r'), std::string::npos);
  }
}

TEST(Sweep, ParallelMatchesSerial) {
  SweepSpec spec = small_spec();
  spec.config.threads = 1;
  const auto serial = run_sweep(spec, 11);
  spec.config.threads = 3;
  const auto parallel = run_sweep(spec, 11);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    std::ostringstream a, b;
    write_risk_csv(a, serial[i]);
    write_risk_csv(b, parallel[i]);
    EXPECT_EQ(a.str(), b.str());
  }
}

TEST(Sweep, EmptyGridIsHeaderOnly) {
  SweepSpec spec;
  spec.n = 100;
  const auto grids = run_sweep(spec, 1);
  ASSERT_EQ(grids.size(), 4u);
  std::ostringstream csv;
  write_risk_csv(csv, grids[0]);
  EXPECT_EQ(csv.str(), std::string(kRiskCsvHeader) + "\n");
}

TEST(Sweep, InfeasibleCellsAreSkippedWithReason) {
  SweepSpec spec;
  spec.n = 100;
  spec.snr0 = 5.0;
  spec.alphas = {1.0};
  spec.s_values = {10, 80};
  spec.schemes = {Scheme::NaiveGof};
  spec.trials = 2;
  const auto grids = run_sweep(spec, 1);
  EXPECT_EQ(grids[0].rows.size(), 1u);
  ASSERT_EQ(grids[0].skipped.size(), 1u);
  EXPECT_NE(grids[0].skipped[0].find("s=80"), std::string::npos);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.07 + 0.71), "0.78");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Dataset, PathGraphAndDuplicates) {
  const EdgeList e = edges_from("0 1\n1 2\n");
  EXPECT_EQ(e.graph.num_nodes(), 3u);
  EXPECT_EQ(e.graph.num_edges(), 2u);
  const EdgeList d = edges_from("# header\n0 1\n1 0\n\n0 1\n2 2\n");
  EXPECT_EQ(d.graph.num_edges(), 1u);
  EXPECT_EQ(d.graph.num_nodes(), 3u);
  EXPECT_THROW(edges_from("0 1 2\n"), Error);
}

TEST(Dataset, NamedNodes) {
  const EdgeList e = edges_from("\"blog one\" beta\nbeta gamma\n");
  ASSERT_EQ(e.node_names.size(), 3u);
  EXPECT_EQ(e.node_names[0], "blog one");
  EXPECT_TRUE(e.graph.has_edge(0, 1));
  const Partition x = labels_from("\"blog one\" 1\nbeta 0\ngamma -1\n", e);
  EXPECT_EQ(x, Partition({1, -1, -1}));
  EXPECT_THROW(labels_from("\"blog one\" 1\nbeta 0\ndelta 1\n", e), Error);
}

TEST(Dataset, LabelErrors) {
  const EdgeList e = edges_from("0 1\n1 2\n");
  EXPECT_EQ(labels_from("0 +1\n1 -1\n2 1\n", e), Partition({1, -1, 1}));
  EXPECT_THROW(labels_from("0 1\n1 2\n2 1\n", e), Error);   // non-binary
  EXPECT_THROW(labels_from("0 1\n1 1\n", e), Error);        // missing
  EXPECT_THROW(labels_from("0 1\n0 1\n1 1\n2 1\n", e), Error);  // twice
  // Integer labels may add isolated nodes.
  EXPECT_EQ(labels_from("0 1\n1 1\n2 0\n3 0\n", e).size(), 4u);
}

TEST(Dataset, LargestComponent) {
  // Components {0,1,2} and {3,4}, plus isolated 5.
  LabeledGraph g{Graph(6, {{0, 1}, {1, 2}, {3, 4}}), Partition({1, -1, 1, -1, 1, -1}), {}};
  const LabeledGraph lcc = largest_connected_component(g);
  EXPECT_EQ(lcc.graph.num_nodes(), 3u);
  EXPECT_EQ(lcc.labels, Partition({1, -1, 1}));
  // Tie: the component with the smallest id wins.
  LabeledGraph t{Graph(4, {{2, 3}, {0, 1}}), Partition({1, 1, -1, -1}), {"a", "b", "c", "d"}};
  const LabeledGraph tl = largest_connected_component(t);
  EXPECT_EQ(tl.node_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(largest_connected_component(LabeledGraph{}), Error);
}

TEST(Dataset, EstimateParams) {
  // Sizes 2 and 2: within pairs 2, across pairs 4.
  const Graph g(4, {{0, 1}, {0, 2}, {1, 3}});
  const SbmParams p = estimate_params(g, Partition({1, 1, -1, -1}));
  EXPECT_DOUBLE_EQ(p.a, 4.0 * 1 / 2);
  EXPECT_DOUBLE_EQ(p.b, 4.0 * 2 / 4);
  const SbmParams z = estimate_params(Graph(4), Partition({1, 1, -1, -1}));
  EXPECT_EQ(z.a, 0.0);
  EXPECT_EQ(z.b, 0.0);
  EXPECT_THROW(estimate_params(Graph(3), Partition({1, 1, 1})), Error);
}

TEST(Dataset, EstimateParamsConsistency) {
  const std::size_t n = 2000;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = sample_sbm(SbmParams{n, 20, 4}, Partition::halves(n), seed);
    const SbmParams p = estimate_params(g, Partition::halves(n));
    EXPECT_NEAR(p.a, 20.0, 2.0);
    EXPECT_NEAR(p.b, 4.0, 0.4);
  }
}

TEST(Dataset, ProtocolRunsAndIsDeterministic) {
  const std::size_t n = 300;
  const Partition x = Partition::halves(n);
  const LabeledGraph data{sample_sbm(SbmParams{n, 30, 4}, x, 1), x, {}};
  DatasetConfig cfg;
  cfg.rhos = {0.5, 1.0};
  cfg.s_values = {20, 60};
  cfg.trials = 4;
  cfg.config.threads = 2;
  const auto a = run_dataset_protocol(data, cfg, 5);
  cfg.config.threads = 1;
  const auto b = run_dataset_protocol(data, cfg, 5);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].rows.size(), 4u);
    std::ostringstream ca, cb;
    write_risk_csv(ca, a[i]);
    write_risk_csv(cb, b[i]);
    EXPECT_EQ(ca.str(), cb.str());
    EXPECT_EQ(a[i].rows[0].alpha, 0.5);
  }
  const SbmParams est = estimate_params(data);
  EXPECT_DOUBLE_EQ(a[0].rows[0].a, est.a * 0.5);
}

TEST(Dataset, WritersRoundTrip) {
  const Graph g(4, {{0, 1}, {2, 3}});
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(out.str(), "0 1\n2 3\n");
  const EdgeList back = edges_from(out.str());
  EXPECT_EQ(back.graph, g);
  std::ostringstream lab;
  write_labels(lab, Partition({1, -1, 1, -1}));
  EXPECT_EQ(labels_from(lab.str(), back), Partition({1, -1, 1, -1}));
}
