#include "jury/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jury/special_functions.hpp"

namespace jury {

SimulationSummary::SimulationSummary(int jury_size, std::vector<double> thresholds, double median)
    : jury_size_(jury_size), thresholds_(std::move(thresholds)), median_(median) {
  if (jury_size < 1 || jury_size > 0xFFFF) throw std::invalid_argument("SimulationSummary: bad jury size");
  if (!std::is_sorted(thresholds_.begin(), thresholds_.end())) {
    throw std::invalid_argument("SimulationSummary: thresholds must be sorted ascending");
  }
}

void SimulationSummary::accumulate(const JuryOutcome& outcome) {
  if (outcome.selected.size() != static_cast<std::size_t>(jury_size_)) {
    throw std::invalid_argument("SimulationSummary::accumulate: jury size mismatch");
  }
  const std::size_t base = tail_counts_.size();
  tail_counts_.resize(base + thresholds_.size(), 0);
  std::uint16_t minority = 0;
  std::uint16_t below_median = 0;
  double lo = 1.0;
  double hi = 0.0;
  for (const Juror& juror : outcome.selected) {
    // Thresholds are sorted: the juror counts toward every threshold >= c.
    const auto first = std::lower_bound(thresholds_.begin(), thresholds_.end(), juror.c);
    for (auto it = first; it != thresholds_.end(); ++it) {
      ++tail_counts_[base + static_cast<std::size_t>(it - thresholds_.begin())];
    }
    if (juror.group == Group::a) ++minority;
    if (juror.c < median_) ++below_median;
    lo = std::min(lo, juror.c);
    hi = std::max(hi, juror.c);
  }
  minority_.push_back(minority);
  below_median_.push_back(below_median);
  min_c_.push_back(lo);
  max_c_.push_back(hi);
}

void SimulationSummary::merge(const SimulationSummary& other) {
  if (other.jury_size_ != jury_size_ || other.thresholds_ != thresholds_ || other.median_ != median_) {
    throw std::invalid_argument("SimulationSummary::merge: incompatible summaries");
  }
  tail_counts_.insert(tail_counts_.end(), other.tail_counts_.begin(), other.tail_counts_.end());
  minority_.insert(minority_.end(), other.minority_.begin(), other.minority_.end());
  below_median_.insert(below_median_.end(), other.below_median_.begin(), other.below_median_.end());
  min_c_.insert(min_c_.end(), other.min_c_.begin(), other.min_c_.end());
  max_c_.insert(max_c_.end(), other.max_c_.begin(), other.max_c_.end());
}

Estimate SimulationSummary::frequency(std::size_t hits) const {
  const double n = static_cast<double>(n_sims());
  if (n == 0) return {};
  const double q = static_cast<double>(hits) / n;
  return {q, std::sqrt(q * (1.0 - q) / n)};
}

namespace {

// Mean and standard error of values / scale, plus the sample standard deviation.
struct Moments {
  Estimate mean;
  double std_dev = 0.0;
};

Moments moments(std::span<const std::uint16_t> values, double scale) {
  Moments m;
  const auto n = values.size();
  if (n == 0) return m;
  double sum = 0.0;
  for (auto v : values) sum += v / scale;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (auto v : values) {
    const double dev = v / scale - mean;
    ss += dev * dev;
  }
  m.mean.value = mean;
  m.std_dev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  m.mean.std_error = m.std_dev / std::sqrt(static_cast<double>(n));
  return m;
}

}  // namespace

Estimate SimulationSummary::prob_at_least(int x, std::size_t threshold_index) const {
  if (x < 0 || x > jury_size_) throw std::out_of_range("prob_at_least: x outside [0, j]");
  if (threshold_index >= thresholds_.size()) throw std::out_of_range("prob_at_least: threshold index");
  const std::size_t k = thresholds_.size();
  std::size_t hits = 0;
  for (std::size_t s = 0; s < n_sims(); ++s) {
    if (tail_counts_[s * k + threshold_index] >= x) ++hits;
  }
  return frequency(hits);
}

Estimate SimulationSummary::expected_below(std::size_t threshold_index) const {
  if (threshold_index >= thresholds_.size()) throw std::out_of_range("expected_below: threshold index");
  const std::size_t k = thresholds_.size();
  std::vector<std::uint16_t> column(n_sims());
  for (std::size_t s = 0; s < n_sims(); ++s) column[s] = tail_counts_[s * k + threshold_index];
  return moments(column, 1.0).mean;
}

MinorityStats SimulationSummary::minority_stats() const {
  const Moments m = moments(minority_, jury_size_);
  return {m.mean, m.std_dev, minority_at_least(1)};
}

Estimate SimulationSummary::minority_at_least(int x) const {
  if (x < 0 || x > jury_size_) throw std::out_of_range("minority_at_least: x outside [0, j]");
  const auto hits = static_cast<std::size_t>(
      std::count_if(minority_.begin(), minority_.end(), [x](std::uint16_t m) { return m >= x; }));
  return frequency(hits);
}

GroupShareStats SimulationSummary::balanced_group_stats() const {
  const Moments m = moments(minority_, jury_size_);
  return {m.mean, m.std_dev};
}

std::vector<Estimate> SimulationSummary::median_count_stats() const {
  std::vector<std::size_t> at_least(static_cast<std::size_t>(jury_size_) + 2, 0);
  for (auto b : below_median_) ++at_least[b];
  // Suffix sums turn the histogram into at-least counts.
  for (int x = jury_size_ - 1; x >= 0; --x) at_least[x] += at_least[x + 1];
  std::vector<Estimate> out;
  for (int x = 0; x <= jury_size_; ++x) out.push_back(frequency(at_least[x]));
  return out;
}

ExtremeJuryStats SimulationSummary::minmax_extreme_stats(double c_lo, double c_hi) const {
  const auto lo_hits = static_cast<std::size_t>(
      std::count_if(min_c_.begin(), min_c_.end(), [c_lo](double c) { return c <= c_lo; }));
  const auto hi_hits = static_cast<std::size_t>(
      std::count_if(max_c_.begin(), max_c_.end(), [c_hi](double c) { return c >= c_hi; }));
  return {frequency(lo_hits), frequency(hi_hits)};
}

// ---------------------------------------------------------------------------
// Closed forms

double analytic_T_ran(int j, double Fc, int x) { return binom_tail(j, Fc, x); }

double analytic_T_str(int j, int d, int p, double Fc, int x) {
  if (x <= 0) return 1.0;
  if (x > j) return 0.0;
  return binom_tail(j + d + p, Fc, x + p);
}

bool str_exceeds_ran_at_median_exact(int j, int d, int p, int x) {
  if (x <= 0 || x > j) return false;
  const int n = j + d + p;
  if (n > 120) throw std::domain_error("str_exceeds_ran_at_median_exact: panel too large");
  // T_STR = S(n, x+p) / 2^n and T_RAN = S(j, x) / 2^j.
  const uint128 lhs = half_tail_count(n, x + p);
  const uint128 rhs = half_tail_count(j, x) << (d + p);
  return lhs > rhs;
}

bool lemma_comp_stat(int eta, int k) {
  if (eta < 0 || eta > 120) throw std::domain_error("lemma_comp_stat: eta outside [0, 120]");
  // S(eta+2, k+1) / 2^(eta+2) > S(eta, k) / 2^eta
  return half_tail_count(eta + 2, k + 1) > (half_tail_count(eta, k) << 2);
}

double binomial_point_to_tail_ratio(int eta, double q, int k) {
  double tail = 0.0;
  for (int i = eta; i > k; --i) tail += binom_pmf(eta, q, i);
  return binom_pmf(eta, q, k) / tail;
}

double ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t k = 0;
  double d = 0.0;
  while (i < x.size() && k < y.size()) {
    const double v = std::min(x[i], y[k]);
    while (i < x.size() && x[i] == v) ++i;
    while (k < y.size() && y[k] == v) ++k;
    d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(k) / m));
  }
  return d;
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace jury
