#include "sbmtest/gmrf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbmtest/error.hpp"
#include "sbmtest/kernels/dense.hpp"
#include "sbmtest/rng.hpp"

namespace sbmtest {

bool cholesky_upper(DenseMatrix& a) {
  const std::size_t n = a.rows();
  // Right-looking: row k of U, then a rank-one update of the trailing upper
  // triangle, one contiguous axpy per row.
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a(k, k);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double r = std::sqrt(d);
    a(k, k) = r;
    std::span<double> row_k = a.row(k).subspan(k + 1);
    kernels::scale(1.0 / r, row_k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double coeff = a(k, i);
      if (coeff == 0.0) continue;
      kernels::axpy(-coeff, a.row(k).subspan(i), a.row(i).subspan(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) a(i, j) = 0.0;
  }
  return true;
}

GmrfModel build_precision(const Graph& g, double gamma) {
  const std::size_t n = g.num_nodes();
  if (n > kMaxDenseNodes) {
    throw Error(ErrorCode::OutOfRange, "build_precision: n exceeds the dense limit of " +
                                           std::to_string(kMaxDenseNodes));
  }
  if (!std::isfinite(gamma)) throw Error(ErrorCode::InvalidArgument, "build_precision: gamma");
  GmrfModel m;
  m.n = n;
  m.gamma = gamma;
  m.precision = DenseMatrix::identity(n);
  for (const Edge& e : g.edges()) {
    m.precision(e.u, e.v) = gamma;
    m.precision(e.v, e.u) = gamma;
  }
  m.upper = m.precision;
  if (!cholesky_upper(m.upper)) {
    throw Error(ErrorCode::NotPositiveDefinite, "build_precision: I + gamma A is not positive definite");
  }
  return m;
}

SampleMatrix sample_gmrf(const GmrfModel& model, std::size_t t, std::uint64_t seed) {
  const std::size_t n = model.n;
  SampleMatrix z(t, n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : z.node(i)) v = rng.normal();
  }
  // Back substitution on rows of length t.
  for (std::size_t ii = n; ii-- > 0;) {
    std::span<double> zi = z.node(ii);
    for (std::size_t j = ii + 1; j < n; ++j) {
      const double u = model.upper(ii, j);
      if (u != 0.0) kernels::axpy(-u, z.node(j), zi);
    }
    kernels::scale(1.0 / model.upper(ii, ii), zi);
  }
  return z;
}

DenseMatrix correlation_matrix(const SampleMatrix& samples) {
  const std::size_t t = samples.samples();
  const std::size_t n = samples.nodes();
  if (t < 2) throw Error(ErrorCode::InvalidArgument, "correlation_matrix: need t >= 2 samples");
  SampleMatrix centered = samples;
  std::vector<double> inv_sd(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> col = centered.node(i);
    const double mean = kernels::sum(col) / static_cast<double>(t);
    for (double& v : col) v -= mean;
    const double ss = kernels::dot(col, col);
    if (!(ss > 0.0)) {
      throw Error(ErrorCode::Degenerate,
                  "correlation_matrix: variable " + std::to_string(i) + " has zero variance");
    }
    inv_sd[i] = 1.0 / std::sqrt(ss);
  }
  // The (t-1) divisors cancel in the ratio.
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double r = kernels::dot(centered.node(i), centered.node(j)) * inv_sd[i] * inv_sd[j];
      r = std::clamp(r, -1.0, 1.0);
      c(i, j) = r;
      c(j, i) = r;
    }
  }
  return c;
}

double weighted_t_statistic(const DenseMatrix& c, const Partition& x) {
  const std::size_t n = x.size();
  if (c.rows() != n || c.cols() != n) {
    throw Error(ErrorCode::LengthMismatch, "weighted_t_statistic: matrix and partition sizes differ");
  }
  const std::vector<double> xd = x.as_doubles();
  double total = 0.0;
  for (std::size_t u = 0; u + 1 < n; ++u) {
    const std::span<const double> tail(xd.data() + u + 1, n - u - 1);
    total += xd[u] * kernels::dot(c.row(u).subspan(u + 1), tail);
  }
  return total;
}

GmrfStatistic gmrf_two_sample(const DenseMatrix& c_a, const SpectralPartition& estimate,
                              const DenseMatrix& c_b) {
  GmrfStatistic s;
  s.estimate = estimate;
  s.t_reference = weighted_t_statistic(c_a, estimate.labels);
  s.t_other = weighted_t_statistic(c_b, estimate.labels);
  s.statistic = s.t_reference - s.t_other;
  return s;
}

GmrfStatistic gmrf_two_sample(const SampleMatrix& samples_a, const SampleMatrix& samples_b,
                              const RecoverySettings& settings) {
  if (samples_a.nodes() != samples_b.nodes()) {
    throw Error(ErrorCode::LengthMismatch, "gmrf_two_sample: sample sets differ in node count");
  }
  const DenseMatrix c_a = correlation_matrix(samples_a);
  const DenseMatrix c_b = correlation_matrix(samples_b);
  return gmrf_two_sample(c_a, spectral_partition(c_a, settings), c_b);
}

}  // namespace sbmtest
