#pragma once

#include <cstddef>
#include <cstdint>

#include "sbmtest/graph.hpp"
#include "sbmtest/partition.hpp"

namespace sbmtest {

struct SbmParams {
  std::size_t n = 0;
  double a = 0.0;  // within-community degree parameter
  double b = 0.0;  // across-community degree parameter

  void validate() const;
  // a + b < n/4; sampling still works outside it.
  bool in_sparse_regime() const { return a + b < static_cast<double>(n) / 4.0; }
};

// (a - b)^2 / (a + b).
double snr(const SbmParams& params);

// Solves (a - b)^2 / (a + b) = snr_target with b = ratio * a.
SbmParams params_from_snr(std::size_t n, double snr_target, double ratio_b_over_a);

Graph sample_sbm(const SbmParams& params, const Partition& x, std::uint64_t seed);

struct EdgeSplit {
  Graph first;  // G1: each edge with probability eta
  Graph rest;   // the complement in G
};

EdgeSplit subsample_edges(const Graph& g, double eta, std::uint64_t seed);

Graph sparsify(const Graph& g, double rho, std::uint64_t seed);

enum class PerturbMode { Shift, RandomRelabel };

// Shift: moves floor(s/2) nodes from each community to the other, taking
// the lowest-index nodes of each label. Balance is kept and the distortion
// is 2*floor(s/2). RandomRelabel: flips s distinct uniformly chosen nodes.
Partition perturb_partition(const Partition& x, std::size_t s, PerturbMode mode,
                            std::uint64_t seed);

}  // namespace sbmtest
