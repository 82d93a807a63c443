#include "sbmtest/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <unordered_map>

#include "sbmtest/error.hpp"
#include "sbmtest/gof.hpp"
#include "sbmtest/parallel.hpp"
#include "sbmtest/recovery.hpp"
#include "sbmtest/rng.hpp"
#include "sbmtest/test_result.hpp"
#include "sbmtest/tst.hpp"

namespace sbmtest {

namespace {

struct Token {
  std::string text;
  bool quoted = false;
};

[[noreturn]] void parse_fail(const std::string& what, std::size_t line) {
  throw Error(ErrorCode::Parse, what + " (line " + std::to_string(line) + ")");
}

// Splits a line into whitespace-separated tokens; "..." groups a name.
// Returns nothing for blank and comment lines.
std::vector<Token> tokenize(const std::string& line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const unsigned char c = static_cast<unsigned char>(line[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (out.empty() && c == '#') break;
    Token t;
    if (c == '"') {
      const std::size_t close = line.find('"', i + 1);
      if (close == std::string::npos) parse_fail("unterminated quoted name", line_no);
      t.text = line.substr(i + 1, close - i - 1);
      t.quoted = true;
      i = close + 1;
    } else {
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      t.text = line.substr(start, i - start);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::optional<std::uint32_t> as_id(const Token& t) {
  if (t.quoted || t.text.empty()) return std::nullopt;
  std::uint32_t v = 0;
  const char* end = t.text.data() + t.text.size();
  const auto res = std::from_chars(t.text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return in;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in) {
  std::vector<std::pair<Token, Token>> pairs;
  bool named = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<Token> tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) parse_fail("expected 'u v'", line_no);
    if (!as_id(tokens[0]) || !as_id(tokens[1])) named = true;
    pairs.emplace_back(std::move(tokens[0]), std::move(tokens[1]));
  }

  EdgeList out;
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  std::size_t n = 0;
  if (named) {
    std::unordered_map<std::string, std::uint32_t> index;
    auto id_of = [&](const std::string& name) {
      auto [it, inserted] = index.emplace(name, static_cast<std::uint32_t>(out.node_names.size()));
      if (inserted) out.node_names.push_back(name);
      return it->second;
    };
    for (const auto& [u, v] : pairs) {
      const std::uint32_t iu = id_of(u.text);
      const std::uint32_t iv = id_of(v.text);
      if (iu != iv) edges.push_back({std::min(iu, iv), std::max(iu, iv)});
    }
    n = out.node_names.size();
  } else {
    for (const auto& [u, v] : pairs) {
      const std::uint32_t iu = *as_id(u);
      const std::uint32_t iv = *as_id(v);
      n = std::max<std::size_t>(n, std::max(iu, iv) + std::size_t{1});
      if (iu != iv) edges.push_back({std::min(iu, iv), std::max(iu, iv)});
    }
  }
  sort_unique_edges(n, edges);
  out.graph = Graph::from_sorted_edges(n, std::move(edges));
  return out;
}

EdgeList load_edge_list(const std::string& path) {
  std::ifstream in = open_input(path);
  return parse_edge_list(in);
}

Partition parse_labels(std::istream& in, const EdgeList& edges) {
  std::size_t n = edges.graph.num_nodes();
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < edges.node_names.size(); ++i) {
    index.emplace(edges.node_names[i], static_cast<std::uint32_t>(i));
  }
  std::vector<std::int8_t> labels(n, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<Token> tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) parse_fail("expected 'node label'", line_no);
    std::size_t id = 0;
    if (edges.node_names.empty()) {
      const auto v = as_id(tokens[0]);
      if (!v) parse_fail("node '" + tokens[0].text + "' is not an integer id", line_no);
      id = *v;
      // Integer ids may name isolated nodes absent from the edge list.
      if (id >= n) {
        n = id + 1;
        labels.resize(n, 0);
      }
    } else {
      auto it = index.find(tokens[0].text);
      if (it == index.end()) {
        throw Error(ErrorCode::UnknownNode, "labels: unknown node '" + tokens[0].text + "'");
      }
      id = it->second;
    }
    const std::string& lab = tokens[1].text;
    std::int8_t value = 0;
    if (lab == "1" || lab == "+1") {
      value = 1;
    } else if (lab == "-1" || lab == "0") {
      value = -1;
    } else {
      parse_fail("label '" + lab + "' is not one of +1, -1, 1, 0", line_no);
    }
    if (labels[id] != 0) parse_fail("node '" + tokens[0].text + "' labelled twice", line_no);
    labels[id] = value;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] == 0) {
      const std::string name = edges.node_names.empty() ? std::to_string(i) : edges.node_names[i];
      throw Error(ErrorCode::UnknownNode, "labels: node '" + name + "' has no label");
    }
  }
  return Partition(std::move(labels));
}

Partition load_labels(const std::string& path, const EdgeList& edges) {
  std::ifstream in = open_input(path);
  return parse_labels(in, edges);
}

LabeledGraph load_labeled_graph(const std::string& edges_path, const std::string& labels_path) {
  EdgeList e = load_edge_list(edges_path);
  Partition x = load_labels(labels_path, e);
  if (x.size() > e.graph.num_nodes()) {
    const auto edges = e.graph.edges();
    e.graph = Graph::from_sorted_edges(x.size(), std::vector<Edge>(edges.begin(), edges.end()));
  }
  return LabeledGraph{std::move(e.graph), std::move(x), std::move(e.node_names)};
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_labels(std::ostream& out, const Partition& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << i << ' ' << (x[i] > 0 ? "+1" : "-1") << '\n';
  }
}

LabeledGraph largest_connected_component(const LabeledGraph& g) {
  const std::size_t n = g.graph.num_nodes();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "largest_connected_component: empty graph");
  if (g.labels.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "largest_connected_component: labels length differs");
  }
  constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
  std::vector<std::uint32_t> component(n, kUnseen);
  std::vector<std::uint32_t> queue;
  std::uint32_t best = 0;
  std::size_t best_size = 0;
  std::uint32_t next_label = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (component[start] != kUnseen) continue;
    const std::uint32_t c = next_label++;
    queue.assign(1, static_cast<std::uint32_t>(start));
    component[start] = c;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::uint32_t w : g.graph.neighbors(queue[head])) {
        if (component[w] == kUnseen) {
          component[w] = c;
          queue.push_back(w);
        }
      }
    }
    if (queue.size() > best_size) {
      best_size = queue.size();
      best = c;
    }
  }

  std::vector<std::uint32_t> new_id(n, kUnseen);
  std::vector<std::int8_t> labels;
  std::vector<std::string> names;
  labels.reserve(best_size);
  std::uint32_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (component[i] != best) continue;
    new_id[i] = k++;
    labels.push_back(g.labels[i]);
    if (!g.node_names.empty()) names.push_back(g.node_names[i]);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.graph.edges()) {
    if (component[e.u] == best) edges.push_back({new_id[e.u], new_id[e.v]});
  }
  // Relabelling is monotone, so the edge order is preserved.
  return LabeledGraph{Graph::from_sorted_edges(best_size, std::move(edges)),
                      Partition(std::move(labels)), std::move(names)};
}

SbmParams estimate_params(const Graph& g, const Partition& x) {
  const std::size_t n = g.num_nodes();
  if (x.size() != n) throw Error(ErrorCode::LengthMismatch, "estimate_params: labels length differs");
  const double pos = static_cast<double>(x.count(1));
  const double neg = static_cast<double>(x.count(-1));
  if (pos == 0.0 || neg == 0.0) {
    throw Error(ErrorCode::Degenerate, "estimate_params: labels contain a single community");
  }
  std::size_t within = 0;
  std::size_t across = 0;
  for (const Edge& e : g.edges()) {
    if (x[e.u] == x[e.v]) {
      ++within;
    } else {
      ++across;
    }
  }
  const double nd = static_cast<double>(n);
  const double within_pairs = pos * (pos - 1.0) / 2.0 + neg * (neg - 1.0) / 2.0;
  const double across_pairs = pos * neg;
  SbmParams p;
  p.n = n;
  p.a = within_pairs > 0.0 ? nd * static_cast<double>(within) / within_pairs : 0.0;
  p.b = nd * static_cast<double>(across) / across_pairs;
  return p;
}

SbmParams estimate_params(const LabeledGraph& g) { return estimate_params(g.graph, g.labels); }

DatasetSummary summarize_dataset(const LabeledGraph& g, const RecoverySettings& settings) {
  DatasetSummary s;
  s.nodes = g.graph.num_nodes();
  s.edges = g.graph.num_edges();
  s.community_pos = g.labels.count(1);
  s.community_neg = g.labels.count(-1);
  s.estimated = estimate_params(g);
  s.spectral_errors = distortion(spectral_partition(g.graph, settings).labels, g.labels);
  return s;
}

namespace {

struct TrialOutcome {
  bool false_alarm = false;
  bool missed = false;
  std::optional<std::string> error;
};

TrialOutcome dataset_trial(Scheme scheme, const LabeledGraph& data, const SbmParams& estimated,
                           double rho, std::size_t s, const DatasetConfig& config,
                           std::uint64_t seed) {
  TrialOutcome out;
  const Partition& x = data.labels;
  const Graph g = sparsify(data.graph, rho, derive_seed(seed, 1));
  const Partition y = perturb_partition(x, s, PerturbMode::RandomRelabel, derive_seed(seed, 6));
  // Sparsification thins both communities alike, so the effective parameters scale by rho.
  SbmParams effective = estimated;
  effective.a *= rho;
  effective.b *= rho;
  RecoverySettings rs = config.config.recovery;
  rs.seed = derive_seed(seed, 4);
  switch (scheme) {
    case Scheme::ProposedGof:
      out.false_alarm = gof_test(g, x, effective, config.config.gof).reject;
      out.missed = !gof_test(g, y, effective, config.config.gof).reject;
      break;
    case Scheme::NaiveGof: {
      const Partition xg = spectral_partition(g, rs).labels;
      out.false_alarm = 2 * distortion(xg, x) >= s;
      out.missed = 2 * distortion(xg, y) < s;
      break;
    }
    case Scheme::ProposedTst:
    case Scheme::NaiveTst: {
      const Graph g2 = sparsify(sample_sbm(estimated, x, derive_seed(seed, 3)), rho,
                                derive_seed(seed, 7));
      const Graph h = sparsify(sample_sbm(estimated, y, derive_seed(seed, 2)), rho,
                               derive_seed(seed, 8));
      if (scheme == Scheme::ProposedTst) {
        const TstReference ref = prepare_tst_reference(g, config.config.tst, derive_seed(seed, 5));
        out.false_alarm = evaluate_tst(ref, g2, effective, config.config.tst).reject;
        out.missed = !evaluate_tst(ref, h, effective, config.config.tst).reject;
      } else {
        const Partition xg = spectral_partition(g, rs).labels;
        const Partition xg2 = spectral_partition(g2, rs).labels;
        const Partition xh = spectral_partition(h, rs).labels;
        out.false_alarm = 2 * distortion(xg, xg2) >= s;
        out.missed = 2 * distortion(xg, xh) < s;
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<RiskGrid> run_dataset_protocol(const LabeledGraph& data, const DatasetConfig& config,
                                           std::uint64_t top_seed) {
  if (config.trials < 1) throw Error(ErrorCode::Config, "dataset: trials must be >= 1");
  const std::size_t n = data.graph.num_nodes();
  const SbmParams estimated = estimate_params(data);
  estimated.validate();
  for (double rho : config.rhos) {
    if (!(rho > 0.0 && rho <= 1.0)) throw Error(ErrorCode::Config, "dataset: rho must be in (0, 1]");
  }

  struct Cell {
    std::size_t grid;
    double rho;
    std::size_t s;
    std::uint64_t seed;
    std::string skipped;
  };
  std::vector<RiskGrid> grids;
  std::vector<Cell> cells;
  for (std::size_t gi = 0; gi < config.schemes.size(); ++gi) {
    const Scheme scheme = config.schemes[gi];
    grids.push_back(RiskGrid{scheme, {}, {}});
    for (double rho : config.rhos) {
      for (std::size_t s : config.s_values) {
        Cell c{gi, rho, s, cell_seed(top_seed, scheme, s, rho), {}};
        if (s < 1 || 2 * s > n) c.skipped = "s must satisfy 1 <= s <= n/2";
        if (scheme == Scheme::ProposedGof && estimated.a == estimated.b) {
          c.skipped = "proposed GoF needs a != b";
        }
        cells.push_back(std::move(c));
      }
    }
  }

  const std::size_t m = config.trials;
  std::vector<TrialOutcome> outcomes(cells.size() * m);
  parallel_for(outcomes.size(), config.config.threads, [&](std::size_t i) {
    const Cell& c = cells[i / m];
    if (!c.skipped.empty()) return;
    try {
      outcomes[i] = dataset_trial(config.schemes[c.grid], data, estimated, c.rho, c.s, config,
                                  derive_seed(c.seed, i % m));
    } catch (const Error& e) {
      outcomes[i].error = e.what();
    }
  });

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& c = cells[ci];
    const Scheme scheme = config.schemes[c.grid];
    std::string reason = c.skipped;
    std::size_t fa = 0;
    std::size_t md = 0;
    for (std::size_t t = 0; t < m && reason.empty(); ++t) {
      const TrialOutcome& o = outcomes[ci * m + t];
      if (o.error) reason = *o.error;
      fa += o.false_alarm;
      md += o.missed;
    }
    RiskGrid& grid = grids[c.grid];
    if (!reason.empty()) {
      grid.skipped.push_back(std::string(scheme_name(scheme)) + " rho=" + format_number(c.rho) +
                             " s=" + std::to_string(c.s) + ": " + reason);
      continue;
    }
    RiskRow row;
    row.scheme = scheme;
    row.n = n;
    row.a = estimated.a * c.rho;
    row.b = estimated.b * c.rho;
    row.alpha = c.rho;
    row.snr = row.a + row.b > 0.0 ? snr(SbmParams{n, row.a, row.b}) : 0.0;
    row.s = c.s;
    row.trials = m;
    row.fa = static_cast<double>(fa) / static_cast<double>(m);
    row.md = static_cast<double>(md) / static_cast<double>(m);
    row.seed = c.seed;
    grid.rows.push_back(row);
  }
  return grids;
}

}  // namespace sbmtest
