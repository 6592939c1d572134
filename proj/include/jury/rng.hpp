#pragma once

#include <cstdint>
#include <limits>

namespace jury {

/**
 * Seeded xoshiro256** generator with keyed substreams.
 *
 * The 256-bit state is derived from the key (seed, stream, lane) by feeding
 * the three words through SplitMix64, so every key yields an independent,
 * reproducible sequence. Simulations key replication i as (seed, i, lane);
 * the lane separates the panel draw from auxiliary randomness such as the
 * random-procedure subset. The sequence depends on nothing but the key.
 *
 * Continuous variates:
 *   uniform()  53-bit mantissa, [0, 1)
 *   normal()   Marsaglia polar method
 *   gamma(k)   Marsaglia-Tsang squeeze; k < 1 boosted via gamma(k + 1) * U^(1/k)
 *   beta(a,b)  X / (X + Y) with X ~ gamma(a), Y ~ gamma(b)
 */
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t lane = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  result_type next();

  double uniform();
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  double normal();
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::uint64_t s_[4];
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace jury
