#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sbmtest/dense_matrix.hpp"
#include "sbmtest/graph.hpp"
#include "sbmtest/partition.hpp"
#include "sbmtest/test_result.hpp"

namespace sbmtest {

struct RecoverySettings {
  double tau = 0.0;            // weight of the rank-one term tau * 1 1^T
  std::size_t max_iters = 1000;
  double tol = 1e-6;           // absolute eigen-residual for both eigenpairs
  std::uint64_t seed = 0;
  std::size_t subspace = 8;    // block width of the orthogonal iteration, >= 2

  // tau = 1/(10n), used for synthetic SBM graphs.
  static RecoverySettings synthetic(std::size_t n);
  // tau = 1, used for real networks.
  static RecoverySettings dataset();
  void validate() const;
};

struct SpectralPartition {
  Partition labels;
  // The two eigenpairs of largest magnitude, ordered by |lambda|.
  std::array<double, 2> eigenvalues{};
  std::array<double, 2> residuals{};
  std::vector<double> second_eigenvector;
  std::size_t iterations = 0;
  bool converged = false;
};

// Spectral clustering on A + tau 1 1^T: orthogonal iteration with
// Gram-Schmidt and Rayleigh-Ritz, then 1-D 2-means on the second eigenvector.
SpectralPartition spectral_partition(const Graph& g, const RecoverySettings& settings);
// Same on a symmetric dense matrix (used for sample correlation matrices).
SpectralPartition spectral_partition(const DenseMatrix& c, const RecoverySettings& settings);

// Optimal 1-D 2-means split. The upper cluster is labelled +1; equal values
// are ordered by node index.
Partition two_means_split(std::span<const double> values);

// Eigen-decomposition of a small symmetric matrix (row-major p x p) by cyclic
// Jacobi rotations. Eigenvectors are returned as columns of `vectors`.
void symmetric_eigen(std::size_t p, std::vector<double> matrix, std::vector<double>& values,
                     std::vector<double>& vectors);

// Rejects iff distortion(x0, x_hat) >= s/2, x_hat recovered from g.
TestResult naive_gof(const Graph& g, const Partition& x0, std::size_t s,
                     const RecoverySettings& settings);

// Rejects iff distortion(x_hat_g, x_hat_h) >= s/2.
TestResult naive_tst(const Graph& g, const Graph& h, std::size_t s,
                     const RecoverySettings& settings);

}  // namespace sbmtest
