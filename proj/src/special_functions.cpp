#include "jury/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace jury {

namespace {

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

// Continued fraction for I_x(a, b), Lentz's method. Converges quickly for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 1000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double incomplete_beta_integer(int a, int b, double x) {
  if (a < 1 || b < 1) throw std::domain_error("incomplete_beta_integer: a and b must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete_beta_integer: x outside [0, 1]");
  return binom_tail(a + b - 1, x, a);
}

double log_choose(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double binom_pmf(int n, double q, int k) {
  if (n < 0) throw std::domain_error("binom_pmf: n must be nonnegative");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("binom_pmf: q outside [0, 1]");
  if (k < 0 || k > n) return 0.0;
  if (q == 0.0) return k == 0 ? 1.0 : 0.0;
  if (q == 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_choose(n, k) + k * std::log(q) + (n - k) * std::log1p(-q));
}

double binom_tail(int n, double q, int k) {
  if (n < 0) throw std::domain_error("binom_tail: n must be nonnegative");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("binom_tail: q outside [0, 1]");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double sum = 0.0;
  // Smallest terms first.
  for (int i = n; i >= k; --i) sum += binom_pmf(n, q, i);
  return sum > 1.0 ? 1.0 : sum;
}

uint128 choose_exact(int n, int k) {
  if (n < 0 || n > 126) throw std::domain_error("choose_exact: n outside [0, 126]");
  if (k < 0 || k > n) return 0;
  std::vector<uint128> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int m = i; m >= 1; --m) row[m] += row[m - 1];
  }
  return row[k];
}

uint128 half_tail_count(int n, int k) {
  if (n < 0 || n > 126) throw std::domain_error("half_tail_count: n outside [0, 126]");
  if (k < 0) k = 0;
  std::vector<uint128> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int m = i; m >= 1; --m) row[m] += row[m - 1];
  }
  uint128 sum = 0;
  for (int i = k; i <= n; ++i) sum += row[i];
  return sum;
}

}  // namespace jury
