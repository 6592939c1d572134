#pragma once

#include <cstdint>

namespace jury {

/// log B(a, b) = lgamma(a) + lgamma(b) - lgamma(a + b). Thread-safe.
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), evaluated with a modified-Lentz
/// continued fraction. Absolute error below 1e-12 for a, b in (0, 100].
double incomplete_beta(double a, double b, double x);

/// Closed form of I_x(a, b) for integer a, b >= 1, via the binomial identity
/// I_x(a, b) = P(Bi(a + b - 1, x) >= a).
double incomplete_beta_integer(int a, int b, double x);

/// log of the binomial coefficient C(n, k).
double log_choose(int n, int k);

/// P(Bi(n, q) = k).
double binom_pmf(int n, double q, int k);

/// P(Bi(n, q) >= k), summed term by term over the upper tail (no 1 - cdf
/// cancellation). k <= 0 gives 1, k > n gives 0.
double binom_tail(int n, double q, int k);

/// 128-bit unsigned integer for exact binomial counts.
__extension__ using uint128 = unsigned __int128;

/// Exact binomial coefficient; n <= 126 fits in 128 bits.
uint128 choose_exact(int n, int k);

/// Exact sum_{i >= k} C(n, i), i.e. 2^n * P(Bi(n, 1/2) >= k).
uint128 half_tail_count(int n, int k);

}  // namespace jury
