#pragma once

#include <cstddef>
#include <optional>

namespace sbmtest {

// (a-b)^2 (1/(a(1-a/n)) + 1/(b(1-b/n))); requires 0 < a, b < n.
double nu(double n, double a, double b);

// (sqrt(ab)/n + sqrt((1-a/n)(1-b/n)))^(s(n-s)), evaluated in log space.
double gof_bc_bound(std::size_t n, std::size_t s, double a, double b);

struct Chi2Bound {
  double value = 1.0;          // upper bound on E[L^2]; +inf on overflow
  bool overflow = false;
  bool risk_at_least_quarter = false;  // value < 3.08
};

// exp(2 (t^2/m) (e^{2 nu} - 1)), t = s/2, m = n/2.
Chi2Bound gof_chi2_bound(std::size_t n, std::size_t s, double a, double b);

struct TstConverse {
  double tau = 0.0;          // Lambda n / (2n - a - b)
  double gamma_exact = 0.0;  // sum over even k < s of C(n/2, k/2)^2 / C(n, n/2)
  double gamma_upper = 0.0;  // sqrt(2n/pi^2) 2^{-n(1 - h2(s/n))}
  std::optional<double> beta_upper;      // 2^{4 tau} / (1 - 4 tau), tau < 1/4
  std::optional<double> tst_risk_lower;  // 1 - sqrt(log(beta / (1 - gamma)))
};

TstConverse tst_converse(std::size_t n, std::size_t s, double a, double b);

// Binary entropy in bits.
double binary_entropy_bits(double p);
double log_binomial(double n, double k);

struct BoundReport {
  std::size_t n = 0;
  std::size_t s = 0;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> nu;  // absent outside 0 < a, b < n
  double bc = 1.0;
  std::optional<Chi2Bound> chi2;
  TstConverse tst;
};

BoundReport bound_report(std::size_t n, std::size_t s, double a, double b);

}  // namespace sbmtest
