#include "sbmtest/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "sbmtest/error.hpp"

namespace sbmtest {

double nu(double n, double a, double b) {
  if (!(a > 0.0 && a < n) || !(b > 0.0 && b < n)) {
    throw Error(ErrorCode::OutOfRange, "nu: requires 0 < a < n and 0 < b < n");
  }
  const double d = a - b;
  return d * d * (1.0 / (a * (1.0 - a / n)) + 1.0 / (b * (1.0 - b / n)));
}

double gof_bc_bound(std::size_t n_nodes, std::size_t s_changed, double a, double b) {
  const double n = static_cast<double>(n_nodes);
  if (!(a >= 0.0 && a <= n) || !(b >= 0.0 && b <= n) || s_changed > n_nodes) {
    throw Error(ErrorCode::OutOfRange, "gof_bc_bound: requires 0 <= a, b <= n and s <= n");
  }
  const double s = static_cast<double>(s_changed);
  const double exponent = s * (n - s);
  if (exponent == 0.0 || a == b) return 1.0;
  const double p = a / n;
  const double q = b / n;
  // The per-pair coefficient is 1 - h with h the squared Hellinger distance;
  // this form keeps h accurate when it is tiny.
  const double d1 = std::sqrt(p) - std::sqrt(q);
  const double d2 = (q - p) / (std::sqrt(1.0 - p) + std::sqrt(1.0 - q));
  const double h = 0.5 * (d1 * d1 + d2 * d2);
  if (h >= 1.0) return 0.0;
  return std::exp(exponent * std::log1p(-h));
}

Chi2Bound gof_chi2_bound(std::size_t n_nodes, std::size_t s_changed, double a, double b) {
  const double n = static_cast<double>(n_nodes);
  const double v = nu(n, a, b);
  const double t = static_cast<double>(s_changed) / 2.0;
  const double m = n / 2.0;
  const double x = 2.0 * (t * t / m) * std::expm1(2.0 * v);
  Chi2Bound out;
  if (!(x < 709.0)) {
    out.value = std::numeric_limits<double>::infinity();
    out.overflow = true;
  } else {
    out.value = std::exp(x);
  }
  out.risk_at_least_quarter = out.value < 3.08;
  return out;
}

double binary_entropy_bits(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

TstConverse tst_converse(std::size_t n_nodes, std::size_t s_changed, double a, double b) {
  const double n = static_cast<double>(n_nodes);
  if (n_nodes < 2 || !(a >= 0.0 && a <= n) || !(b >= 0.0 && b <= n) || 2 * s_changed > n_nodes) {
    throw Error(ErrorCode::OutOfRange, "tst_converse: requires n >= 2, 0 <= a, b <= n, s <= n/2");
  }
  TstConverse out;
  if (a + b > 0.0 && 2.0 * n - a - b > 0.0) {
    const double lambda = (a - b) * (a - b) / (a + b);
    out.tau = lambda * n / (2.0 * n - a - b);
  }
  const double half = n / 2.0;
  // Only even distances are reachable between balanced vectors: k = 2j.
  if (s_changed > 0) {
    const double log_den = log_binomial(n, half);
    std::vector<double> terms;
    for (std::size_t j = 0; 2 * j < s_changed && static_cast<double>(j) <= half; ++j) {
      terms.push_back(2.0 * log_binomial(half, static_cast<double>(j)) - log_den);
    }
    double mx = -std::numeric_limits<double>::infinity();
    for (double t : terms) mx = std::max(mx, t);
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - mx);
    out.gamma_exact = std::exp(mx + std::log(acc));
  }
  const double h = binary_entropy_bits(static_cast<double>(s_changed) / n);
  out.gamma_upper = std::exp(0.5 * std::log(2.0 * n / (std::numbers::pi * std::numbers::pi)) -
                             n * (1.0 - h) * std::numbers::ln2);
  if (out.tau < 0.25) {
    const double beta = std::exp2(4.0 * out.tau) / (1.0 - 4.0 * out.tau);
    out.beta_upper = beta;
    if (out.gamma_exact < 1.0) {
      out.tst_risk_lower = 1.0 - std::sqrt(std::log(beta / (1.0 - out.gamma_exact)));
    }
  }
  return out;
}

BoundReport bound_report(std::size_t n, std::size_t s, double a, double b) {
  BoundReport r;
  r.n = n;
  r.s = s;
  r.a = a;
  r.b = b;
  const double nd = static_cast<double>(n);
  if (a > 0.0 && a < nd && b > 0.0 && b < nd) {
    r.nu = nu(nd, a, b);
    r.chi2 = gof_chi2_bound(n, s, a, b);
  }
  r.bc = gof_bc_bound(n, s, a, b);
  r.tst = tst_converse(n, s, a, b);
  return r;
}

}  // namespace sbmtest
