#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jury/procedures.hpp"

namespace jury {

/// Monte Carlo estimate with its normal-approximation standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct MinorityStats {
  Estimate mean_fraction;
  double std_fraction = 0.0;
  Estimate at_least_one;
};

struct GroupShareStats {
  Estimate mean_fraction_a;
  double std_fraction_a = 0.0;
};

struct ExtremeJuryStats {
  Estimate min_below;  // P(min_c <= c_lo)
  Estimate max_above;  // P(max_c >= c_hi)
};

/**
 * Per-jury statistics for one procedure.
 *
 * Each accumulated jury stores its count of jurors at or below every tail
 * threshold, its group-a count, its count strictly below the pooled median
 * and its extreme c-values. All aggregates are computed from these records
 * on demand, so merge() is plain concatenation: associative, with the empty
 * summary as identity, and reduction order fixes the bits of every result.
 */
class SimulationSummary {
 public:
  SimulationSummary(int jury_size, std::vector<double> thresholds, double median);

  void accumulate(const JuryOutcome& outcome);
  void merge(const SimulationSummary& other);

  std::size_t n_sims() const { return minority_.size(); }
  int jury_size() const { return jury_size_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  double median() const { return median_; }

  /// P(at least x jurors with c <= thresholds()[index]); 0 <= x <= j.
  Estimate prob_at_least(int x, std::size_t threshold_index) const;
  /// Expected number of selected jurors with c <= thresholds()[index].
  Estimate expected_below(std::size_t threshold_index) const;

  MinorityStats minority_stats() const;
  /// P(at least x group-a jurors); 0 <= x <= j.
  Estimate minority_at_least(int x) const;
  GroupShareStats balanced_group_stats() const;

  /// Entry x is P(at least x jurors below the pooled median), x = 0..j.
  std::vector<Estimate> median_count_stats() const;

  ExtremeJuryStats minmax_extreme_stats(double c_lo, double c_hi) const;

  /// Raw per-jury records (row-major n_sims x thresholds for tail counts).
  std::span<const std::uint16_t> tail_counts() const { return tail_counts_; }
  std::span<const std::uint16_t> minority_counts() const { return minority_; }
  std::span<const std::uint16_t> below_median_counts() const { return below_median_; }
  std::span<const double> min_c() const { return min_c_; }
  std::span<const double> max_c() const { return max_c_; }

  friend bool operator==(const SimulationSummary&, const SimulationSummary&) = default;

 private:
  Estimate frequency(std::size_t hits) const;

  int jury_size_;
  std::vector<double> thresholds_;
  double median_;
  std::vector<std::uint16_t> tail_counts_;
  std::vector<std::uint16_t> minority_;
  std::vector<std::uint16_t> below_median_;
  std::vector<double> min_c_;
  std::vector<double> max_c_;
};

/// P(Bi(j, Fc) >= x): random selection seats each juror below c with
/// probability F(c) independently.
double analytic_T_ran(int j, double Fc, int x);

/// P(Bi(j + d + p, Fc) >= x + p): struck seats at least x jurors below c iff
/// the panel holds at least x + p of them. Stated at the median (Fc = 1/2)
/// for d = p; the general-Fc form follows from order-statistic selection.
double analytic_T_str(int j, int d, int p, double Fc, int x);

/// Exact comparison at the median: T_STR(x; med) > T_RAN(x; med), decided
/// in integer arithmetic (no rounding).
bool str_exceeds_ran_at_median_exact(int j, int d, int p, int x);

/// Whether P[Bi(eta+2, 1/2) >= k+1] > P[Bi(eta, 1/2) >= k], decided exactly.
/// Equals (k > eta/2 + 1/2).
bool lemma_comp_stat(int eta, int k);

/// P[Bi(eta, q) = k] / P[Bi(eta, q) > k], with the upper tail summed directly.
double binomial_point_to_tail_ratio(int eta, double q, int k);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_x - F_y|. Inputs need not be sorted.
double ks_two_sample(std::vector<double> x, std::vector<double> y);
/// Asymptotic two-sample critical value at level alpha: c(alpha) sqrt((n+m)/(n m)).
double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha);

}  // namespace jury
