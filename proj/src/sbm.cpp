#include "sbmtest/sbm.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sbmtest/error.hpp"
#include "sbmtest/rng.hpp"

namespace sbmtest {

void SbmParams::validate() const {
  const double nd = static_cast<double>(n);
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "SBM parameters a, b must be finite and >= 0");
  }
  if (a > nd || b > nd) {
    throw Error(ErrorCode::OutOfRange, "SBM parameters must satisfy a/n <= 1 and b/n <= 1");
  }
}

double snr(const SbmParams& params) {
  if (params.a + params.b <= 0.0) {
    throw Error(ErrorCode::UndefinedSnr, "SNR undefined for a + b = 0");
  }
  const double d = params.a - params.b;
  return d * d / (params.a + params.b);
}

SbmParams params_from_snr(std::size_t n, double snr_target, double ratio) {
  if (!(snr_target > 0.0) || !std::isfinite(snr_target)) {
    throw Error(ErrorCode::InvalidArgument, "params_from_snr: target SNR must be > 0");
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "params_from_snr: ratio b/a must lie in (0, 1)");
  }
  const double a = (1.0 + ratio) * snr_target / ((1.0 - ratio) * (1.0 - ratio));
  SbmParams p{n, a, ratio * a};
  if (a > static_cast<double>(n)) {
    throw Error(ErrorCode::OutOfRange,
                "params_from_snr: a = " + std::to_string(a) + " exceeds n");
  }
  return p;
}

namespace {

// Geometric gap between successes of Bernoulli(p) trials.
class GapSampler {
 public:
  GapSampler(double p, Rng rng) : p_(p), rng_(rng), log_q_(std::log1p(-p)) {}

  // Returns the number of failures before the next success, saturated at cap.
  std::uint64_t next(std::uint64_t cap) {
    if (p_ >= 1.0) return 0;
    const double g = std::floor(std::log(rng_.uniform_open_zero()) / log_q_);
    if (!(g < static_cast<double>(cap))) return cap;
    return static_cast<std::uint64_t>(g);
  }

 private:
  double p_;
  Rng rng_;
  double log_q_;
};

void within_block(const std::vector<std::uint32_t>& nodes, double p, Rng rng,
                  std::vector<Edge>& out) {
  const std::uint64_t m = nodes.size();
  if (p <= 0.0 || m < 2) return;
  const std::uint64_t total = m * (m - 1) / 2;
  GapSampler gaps(p, rng);
  // Pairs (v, w) with w < v enumerated row by row; row v holds v pairs.
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  std::uint64_t pos = 0;
  while (pos < total) {
    const std::uint64_t g = gaps.next(total);
    if (g >= total - pos) break;
    pos += g;
    w += g;
    while (w >= v) {
      w -= v;
      ++v;
    }
    out.push_back({nodes[w], nodes[v]});
    ++pos;
    ++w;
  }
}

void across_block(const std::vector<std::uint32_t>& left, const std::vector<std::uint32_t>& right,
                  double p, Rng rng, std::vector<Edge>& out) {
  const std::uint64_t cols = right.size();
  const std::uint64_t total = static_cast<std::uint64_t>(left.size()) * cols;
  if (p <= 0.0 || total == 0) return;
  GapSampler gaps(p, rng);
  std::uint64_t pos = 0;
  for (;;) {
    const std::uint64_t g = gaps.next(total);
    if (g >= total - pos) break;
    pos += g;
    std::uint32_t u = left[pos / cols];
    std::uint32_t v = right[pos % cols];
    if (u > v) std::swap(u, v);
    out.push_back({u, v});
    ++pos;
    if (pos >= total) break;
  }
}

}  // namespace

Graph sample_sbm(const SbmParams& params, const Partition& x, std::uint64_t seed) {
  params.validate();
  if (x.size() != params.n) {
    throw Error(ErrorCode::LengthMismatch, "sample_sbm: partition length differs from n");
  }
  if (params.n == 0) return Graph(0);
  const double nd = static_cast<double>(params.n);
  const double p_in = params.a / nd;
  const double p_out = params.b / nd;
  if (p_in > 1.0 || p_out > 1.0) {
    throw Error(ErrorCode::OutOfRange, "sample_sbm: pair probability exceeds 1");
  }
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> neg;
  for (std::size_t i = 0; i < params.n; ++i) {
    (x[i] > 0 ? pos : neg).push_back(static_cast<std::uint32_t>(i));
  }
  Rng root(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>((params.a + params.b) * nd / 4.0 * 1.1) + 16);
  within_block(pos, p_in, root.split(1), edges);
  within_block(neg, p_in, root.split(2), edges);
  across_block(pos, neg, p_out, root.split(3), edges);
  sort_unique_edges(params.n, edges);
  return Graph::from_sorted_edges(params.n, std::move(edges));
}

EdgeSplit subsample_edges(const Graph& g, double eta, std::uint64_t seed) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "subsample_edges: eta must lie in (0, 1)");
  }
  Rng rng(seed);
  std::vector<Edge> first;
  std::vector<Edge> rest;
  for (const Edge& e : g.edges()) (rng.uniform() < eta ? first : rest).push_back(e);
  return {Graph::from_sorted_edges(g.num_nodes(), std::move(first)),
          Graph::from_sorted_edges(g.num_nodes(), std::move(rest))};
}

Graph sparsify(const Graph& g, double rho, std::uint64_t seed) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "sparsify: rho must lie in (0, 1]");
  }
  if (rho == 1.0) return g;
  Rng rng(seed);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (rng.uniform() < rho) kept.push_back(e);
  }
  return Graph::from_sorted_edges(g.num_nodes(), std::move(kept));
}

Partition perturb_partition(const Partition& x, std::size_t s, PerturbMode mode,
                            std::uint64_t seed) {
  const std::size_t n = x.size();
  if (2 * s > n) {
    throw Error(ErrorCode::OutOfRange, "perturb_partition: s exceeds n/2");
  }
  std::vector<std::size_t> chosen;
  if (mode == PerturbMode::Shift) {
    const std::size_t half = s / 2;
    if (x.count(1) < half || x.count(-1) < half) {
      throw Error(ErrorCode::OutOfRange, "perturb_partition: community too small for shift");
    }
    std::size_t taken_pos = 0;
    std::size_t taken_neg = 0;
    for (std::size_t i = 0; i < n && (taken_pos < half || taken_neg < half); ++i) {
      if (x[i] > 0 && taken_pos < half) {
        chosen.push_back(i);
        ++taken_pos;
      } else if (x[i] < 0 && taken_neg < half) {
        chosen.push_back(i);
        ++taken_neg;
      }
    }
  } else {
    // Partial Fisher-Yates.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(idx[i], idx[j]);
    }
    chosen.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s));
  }
  return x.flipped(chosen);
}

}  // namespace sbmtest
