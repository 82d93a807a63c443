#include "sbmtest/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "sbmtest/error.hpp"
#include "sbmtest/kernels/dense.hpp"
#include "sbmtest/rng.hpp"

namespace sbmtest {

RecoverySettings RecoverySettings::synthetic(std::size_t n) {
  RecoverySettings s;
  s.tau = n > 0 ? 1.0 / (10.0 * static_cast<double>(n)) : 0.0;
  return s;
}

RecoverySettings RecoverySettings::dataset() {
  RecoverySettings s;
  s.tau = 1.0;
  return s;
}

void RecoverySettings::validate() const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, "recovery: tau must be finite and >= 0");
  }
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "recovery: max_iters must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "recovery: tol must be > 0");
  if (subspace < 2) throw Error(ErrorCode::InvalidArgument, "recovery: subspace must be >= 2");
}

void symmetric_eigen(std::size_t p, std::vector<double> a, std::vector<double>& values,
                     std::vector<double>& vectors) {
  vectors.assign(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) vectors[i * p + i] = 1.0;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * p + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t i = 0; i + 1 < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        const double aij = at(i, j);
        if (aij == 0.0) continue;
        const double theta = (at(j, j) - at(i, i)) / (2.0 * aij);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < p; ++k) {
          const double aki = at(k, i);
          const double akj = at(k, j);
          at(k, i) = c * aki - s * akj;
          at(k, j) = s * aki + c * akj;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double aik = at(i, k);
          const double ajk = at(j, k);
          at(i, k) = c * aik - s * ajk;
          at(j, k) = s * aik + c * ajk;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double vki = vectors[k * p + i];
          const double vkj = vectors[k * p + j];
          vectors[k * p + i] = c * vki - s * vkj;
          vectors[k * p + j] = s * vki + c * vkj;
        }
      }
    }
  }
  values.resize(p);
  for (std::size_t i = 0; i < p; ++i) values[i] = at(i, i);
}

Partition two_means_split(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return Partition{};
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<std::int8_t> labels(n, 1);
  if (n == 1) return Partition(std::move(labels));
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = values[order[i]];
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  // Minimising within-cluster SSE is maximising S_L^2/k + S_R^2/(n-k).
  double best = -1.0;
  std::size_t best_k = 1;
  double left = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    left += sorted[k - 1];
    const double right = total - left;
    const double score = left * left / static_cast<double>(k) +
                         right * right / static_cast<double>(n - k);
    if (score > best) {
      best = score;
      best_k = k;
    }
  }
  for (std::size_t i = 0; i < best_k; ++i) labels[order[i]] = -1;
  return Partition(std::move(labels));
}

namespace {

using BlockOperator = std::function<void(const std::vector<double>&, std::vector<double>&)>;

// Columns of the n x p row-major block are orthonormalised in place by
// modified Gram-Schmidt, applied twice. Collapsed columns are refilled.
void orthonormalize(std::vector<double>& v, std::size_t n, std::size_t p, Rng& rng) {
  std::vector<double> col(n);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < p; ++k) {
      for (int attempt = 0; attempt < 4; ++attempt) {
        for (std::size_t i = 0; i < n; ++i) col[i] = v[i * p + k];
        const double before = std::sqrt(kernels::dot(col, col));
        for (std::size_t j = 0; j < k; ++j) {
          double proj = 0.0;
          for (std::size_t i = 0; i < n; ++i) proj += v[i * p + j] * col[i];
          for (std::size_t i = 0; i < n; ++i) col[i] -= proj * v[i * p + j];
        }
        const double norm = std::sqrt(kernels::dot(col, col));
        if (norm > 1e-10 * std::max(before, 1e-300) && norm > 1e-300) {
          for (std::size_t i = 0; i < n; ++i) v[i * p + k] = col[i] / norm;
          break;
        }
        for (std::size_t i = 0; i < n; ++i) v[i * p + k] = rng.normal();
      }
    }
  }
}

SpectralPartition run_spectral(std::size_t n, const BlockOperator& apply,
                               const RecoverySettings& settings) {
  settings.validate();
  SpectralPartition out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  if (n == 1) {
    out.labels = Partition(std::vector<std::int8_t>{1});
    out.second_eigenvector = {0.0};
    out.converged = true;
    return out;
  }
  const std::size_t p = std::min(settings.subspace, n);
  Rng rng(derive_seed(settings.seed, 0x5bec7a1ULL));
  std::vector<double> v(n * p);
  for (double& e : v) e = rng.normal();
  orthonormalize(v, n, p, rng);

  std::vector<double> w(n * p);
  std::vector<double> h(p * p);
  std::vector<double> theta;
  std::vector<double> q;
  std::vector<std::size_t> order(p);
  std::array<std::vector<double>, 2> ritz{std::vector<double>(n), std::vector<double>(n)};
  std::vector<double> mr(n);

  for (std::size_t it = 1; it <= settings.max_iters; ++it) {
    apply(v, w);
    // Rayleigh-Ritz on span(V).
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* vi = v.data() + i * p;
      const double* wi = w.data() + i * p;
      for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) h[a * p + b] += vi[a] * wi[b];
      }
    }
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = a + 1; b < p; ++b) {
        const double m = 0.5 * (h[a * p + b] + h[b * p + a]);
        h[a * p + b] = m;
        h[b * p + a] = m;
      }
    }
    symmetric_eigen(p, h, theta, q);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return std::abs(theta[x]) > std::abs(theta[y]);
    });

    // Rotate both blocks into the Ritz basis, ordered by |theta|.
    std::vector<double> vr(n * p);
    std::vector<double> wr(n * p);
    for (std::size_t i = 0; i < n; ++i) {
      const double* vi = v.data() + i * p;
      const double* wi = w.data() + i * p;
      for (std::size_t c = 0; c < p; ++c) {
        const std::size_t src = order[c];
        double sv = 0.0;
        double sw = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
          sv += vi[r] * q[r * p + src];
          sw += wi[r] * q[r * p + src];
        }
        vr[i * p + c] = sv;
        wr[i * p + c] = sw;
      }
    }
    bool done = true;
    for (std::size_t k = 0; k < 2; ++k) {
      const double lambda = theta[order[k]];
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        ritz[k][i] = vr[i * p + k];
        const double r = wr[i * p + k] - lambda * vr[i * p + k];
        res += r * r;
      }
      out.eigenvalues[k] = lambda;
      out.residuals[k] = std::sqrt(res);
      if (!(out.residuals[k] <= settings.tol)) done = false;
    }
    out.iterations = it;
    if (done) {
      out.converged = true;
      break;
    }
    v.swap(wr);
    orthonormalize(v, n, p, rng);
  }

  // Canonical sign: the largest-magnitude entry (lowest index on ties) is positive.
  std::vector<double>& f = ritz[1];
  std::size_t arg = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(f[i]) > std::abs(f[arg])) arg = i;
  }
  if (f[arg] < 0) {
    for (double& e : f) e = -e;
  }
  out.labels = two_means_split(f);
  out.second_eigenvector = std::move(f);
  return out;
}

}  // namespace

SpectralPartition spectral_partition(const Graph& g, const RecoverySettings& settings) {
  const std::size_t n = g.num_nodes();
  const std::size_t p = std::min(settings.subspace, n);
  const double tau = settings.tau;
  BlockOperator apply = [&g, n, p, tau](const std::vector<double>& v, std::vector<double>& w) {
    g.multiply_block(v, w, p);
    if (tau == 0.0) return;
    std::vector<double> colsum(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < p; ++k) colsum[k] += v[i * p + k];
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < p; ++k) w[i * p + k] += tau * colsum[k];
    }
  };
  return run_spectral(n, apply, settings);
}

SpectralPartition spectral_partition(const DenseMatrix& c, const RecoverySettings& settings) {
  if (c.rows() != c.cols()) {
    throw Error(ErrorCode::InvalidArgument, "spectral_partition: matrix must be square");
  }
  const std::size_t n = c.rows();
  const std::size_t p = std::min(settings.subspace, n);
  const double tau = settings.tau;
  BlockOperator apply = [&c, n, p, tau](const std::vector<double>& v, std::vector<double>& w) {
    std::vector<double> colsum(p, 0.0);
    if (tau != 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < p; ++k) colsum[k] += v[i * p + k];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::span<double> out(w.data() + i * p, p);
      kernels::row_times_block(c.row(i), v, p, out);
      for (std::size_t k = 0; k < p; ++k) out[k] += tau * colsum[k];
    }
  };
  return run_spectral(n, apply, settings);
}

TestResult naive_gof(const Graph& g, const Partition& x0, std::size_t s,
                     const RecoverySettings& settings) {
  if (x0.size() != g.num_nodes()) {
    throw Error(ErrorCode::LengthMismatch, "naive_gof: partition length differs from n");
  }
  const SpectralPartition est = spectral_partition(g, settings);
  TestResult r;
  r.statistic = static_cast<double>(distortion(x0, est.labels));
  r.threshold = static_cast<double>(s) / 2.0;
  r.reject = r.statistic >= r.threshold;
  r.add("s", static_cast<double>(s));
  r.add("converged", est.converged ? 1.0 : 0.0);
  r.add("iterations", static_cast<double>(est.iterations));
  return r;
}

TestResult naive_tst(const Graph& g, const Graph& h, std::size_t s,
                     const RecoverySettings& settings) {
  if (g.num_nodes() != h.num_nodes()) {
    throw Error(ErrorCode::LengthMismatch, "naive_tst: graphs differ in node count");
  }
  const SpectralPartition eg = spectral_partition(g, settings);
  const SpectralPartition eh = spectral_partition(h, settings);
  TestResult r;
  r.statistic = static_cast<double>(distortion(eg.labels, eh.labels));
  r.threshold = static_cast<double>(s) / 2.0;
  r.reject = r.statistic >= r.threshold;
  r.add("s", static_cast<double>(s));
  r.add("converged_g", eg.converged ? 1.0 : 0.0);
  r.add("converged_h", eh.converged ? 1.0 : 0.0);
  return r;
}

}  // namespace sbmtest
