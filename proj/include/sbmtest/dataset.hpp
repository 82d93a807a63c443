#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "sbmtest/graph.hpp"
#include "sbmtest/partition.hpp"
#include "sbmtest/risk.hpp"
#include "sbmtest/sbm.hpp"
#include "sbmtest/sweep.hpp"

namespace sbmtest {

struct EdgeList {
  Graph graph;
  // Empty for integer ids; otherwise node i is named node_names[i].
  std::vector<std::string> node_names;
};

struct LabeledGraph {
  Graph graph;
  Partition labels;
  std::vector<std::string> node_names;
};

// One "u v" pair per line, '#' comments, blank lines allowed. Ids are
// nonnegative integers (n = max id + 1) unless any token is quoted or
// non-numeric, in which case every token is a name and ids follow first
// appearance. Duplicate edges collapse and self-loops are dropped.
EdgeList parse_edge_list(std::istream& in);
EdgeList load_edge_list(const std::string& path);

// "node label" per line with label in {+1, -1, 1, 0}; 0 means -1. Every
// node must be labelled exactly once. With integer ids, labels beyond the
// largest edge id extend the node count (isolated nodes); the result is then
// longer than edges.graph and load_labeled_graph pads the graph to match.
Partition parse_labels(std::istream& in, const EdgeList& edges);
Partition load_labels(const std::string& path, const EdgeList& edges);

LabeledGraph load_labeled_graph(const std::string& edges_path, const std::string& labels_path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_labels(std::ostream& out, const Partition& x);

// Largest connected component; ties go to the component holding the smallest
// node id. Nodes keep their relative order.
LabeledGraph largest_connected_component(const LabeledGraph& g);

// a = n * within / within_pairs, b = n * across / across_pairs, using the
// actual community sizes.
SbmParams estimate_params(const Graph& g, const Partition& x);
SbmParams estimate_params(const LabeledGraph& g);

struct DatasetConfig {
  std::vector<double> rhos{1.0};
  std::vector<std::size_t> s_values;
  std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
  std::size_t trials = 100;
  RiskConfig config;  // recovery tau defaults to 1 here
  DatasetConfig() {
    config.synthetic_tau = false;
    config.recovery.tau = 1.0;
    config.tst.recovery.tau = 1.0;
  }
};

struct DatasetSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t community_pos = 0;
  std::size_t community_neg = 0;
  SbmParams estimated;
  std::size_t spectral_errors = 0;  // distortion of spectral clustering at rho = 1
};

DatasetSummary summarize_dataset(const LabeledGraph& g, const RecoverySettings& settings);

// GoF: G sparsified at rho, tested against x_true (size) and against y with
// s random relabels (power), using (rho a_hat, rho b_hat). TST: G' ~ SBM(x_true)
// and H ~ SBM(y) with the estimated parameters; all three graphs sparsified
// at rho. Rows use the alpha column for rho.
std::vector<RiskGrid> run_dataset_protocol(const LabeledGraph& g, const DatasetConfig& config,
                                           std::uint64_t top_seed);

}  // namespace sbmtest
