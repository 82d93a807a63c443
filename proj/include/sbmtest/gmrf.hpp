#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sbmtest/dense_matrix.hpp"
#include "sbmtest/graph.hpp"
#include "sbmtest/partition.hpp"
#include "sbmtest/recovery.hpp"

namespace sbmtest {

inline constexpr std::size_t kMaxDenseNodes = 4000;

struct GmrfModel {
  std::size_t n = 0;
  double gamma = 0.0;
  DenseMatrix precision;  // I + gamma A
  DenseMatrix upper;      // U with precision = U^T U; the lower factor is U^T

  DenseMatrix lower_factor() const { return upper.transposed(); }
};

// Throws NotPositiveDefinite if the Cholesky factorisation fails.
GmrfModel build_precision(const Graph& g, double gamma);

// In-place upper Cholesky of a symmetric positive definite matrix
// (A = U^T U). The strict lower triangle is zeroed. Returns false if a
// non-positive pivot appears.
bool cholesky_upper(DenseMatrix& a);

// t samples of n variables, stored node-major: node(i) holds the t values
// of variable i.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  SampleMatrix(std::size_t t, std::size_t n) : t_(t), n_(n), data_(t * n, 0.0) {}

  std::size_t samples() const { return t_; }
  std::size_t nodes() const { return n_; }
  double operator()(std::size_t sample, std::size_t node) const {
    return data_[node * t_ + sample];
  }
  double& operator()(std::size_t sample, std::size_t node) { return data_[node * t_ + sample]; }
  std::span<const double> node(std::size_t i) const { return {data_.data() + i * t_, t_}; }
  std::span<double> node(std::size_t i) { return {data_.data() + i * t_, t_}; }

  friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

 private:
  std::size_t t_ = 0;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Each sample solves U zeta = xi with xi standard normal, so Cov = precision^-1.
SampleMatrix sample_gmrf(const GmrfModel& model, std::size_t t, std::uint64_t seed);

// Pearson correlation across samples (divisor t-1); unit diagonal.
DenseMatrix correlation_matrix(const SampleMatrix& samples);

// sum_{u<v} x_u x_v C_uv.
double weighted_t_statistic(const DenseMatrix& c, const Partition& x);

struct GmrfStatistic {
  double statistic = 0.0;    // T(C_a, x_hat) - T(C_b, x_hat)
  double t_reference = 0.0;
  double t_other = 0.0;
  SpectralPartition estimate;  // recovered from C_a
};

GmrfStatistic gmrf_two_sample(const SampleMatrix& samples_a, const SampleMatrix& samples_b,
                              const RecoverySettings& settings);
// Variant with precomputed reference correlation and estimate.
GmrfStatistic gmrf_two_sample(const DenseMatrix& c_a, const SpectralPartition& estimate,
                              const DenseMatrix& c_b);

}  // namespace sbmtest
