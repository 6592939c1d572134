#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "jury/distributions.hpp"

namespace jury {

/// Strike-and-Replace state: jurors still to seat, defendant and plaintiff
/// challenges left.
struct SubgameKey {
  int kappa;
  int delta;
  int pi;

  friend bool operator==(const SubgameKey&, const SubgameKey&) = default;
};

/// Challenge thresholds in one subgame. The plaintiff challenges below
/// `plaintiff`, the defendant above `defendant`; a party with no challenges
/// left has no threshold.
struct Thresholds {
  std::optional<double> plaintiff;
  std::optional<double> defendant;
};

/**
 * Subgame-perfect values and thresholds of Strike-and-Replace for every
 * subgame (kappa, delta, pi) with kappa <= j, delta <= d, pi <= p.
 *
 * value(key) is the equilibrium conviction probability of the jury that
 * completes from `key`. Thresholds are continuation-value ratios clamped to
 * [0, 1]; the raw ratio is kept for diagnostics.
 */
class EquilibriumTable {
 public:
  EquilibriumTable(int j, int d, int p);

  int jury_size() const { return j_; }
  int defendant_challenges() const { return d_; }
  int plaintiff_challenges() const { return p_; }
  std::size_t size() const { return values_.size(); }

  bool contains(SubgameKey key) const;
  SubgameKey root() const { return {j_, d_, p_}; }

  /// Throws std::out_of_range for keys outside the table.
  double value(SubgameKey key) const;
  Thresholds thresholds(SubgameKey key) const;
  /// Unclamped value ratios (NaN where the party has no challenge).
  double raw_plaintiff_ratio(SubgameKey key) const;
  double raw_defendant_ratio(SubgameKey key) const;

  // Unchecked fast-path accessors for the simulation loop.
  double plaintiff_threshold_unchecked(SubgameKey key) const { return t_p_[index(key)]; }
  double defendant_threshold_unchecked(SubgameKey key) const { return t_d_[index(key)]; }

  /// CSV with header kappa,delta,pi,value,t_p,t_d; absent thresholds are empty.
  void write_csv(std::ostream& os) const;

 private:
  friend EquilibriumTable solve(const MixtureDistribution&, int, int, int);
  friend EquilibriumTable grid_value_iteration(const MixtureDistribution&, int, int, int, int);

  std::size_t index(SubgameKey key) const {
    return (static_cast<std::size_t>(key.kappa) * (d_ + 1) + key.delta) * (p_ + 1) + key.pi;
  }
  void check(SubgameKey key) const;

  int j_, d_, p_;
  std::vector<double> values_;
  std::vector<double> t_p_;  // NaN when absent
  std::vector<double> t_d_;
  std::vector<double> raw_p_;
  std::vector<double> raw_d_;
};

/// Backward induction over subgames in increasing (kappa, delta, pi) order.
///
///   V(0, ., .)    = 1
///   V(k, 0, 0)    = mu^k
///   t_P(k, d, p)  = V(k, d, p-1) / V(k-1, d, p)
///   t_D(k, d, p)  = V(k, d-1, p) / V(k-1, d, p)
///   V(k, d, p)    = F(t_P) V(k, d, p-1) + (1 - F(t_D)) V(k, d-1, p)
///                   + V(k-1, d, p) \int_{t_P}^{t_D} c f(c) dc
///
/// with t_P = 0 when p = 0 and t_D = 1 when d = 0. The expectation form stays
/// valid after clamping; the equivalent subtraction form
///   V = V(k, d-1, p) - V(k-1, d, p) \int_{t_P}^{t_D} F(c) dc
/// only holds for unclamped ratios.
EquilibriumTable solve(const MixtureDistribution& dist, int j, int d, int p);

/// Grid-based reference; see oracle.hpp.
EquilibriumTable grid_value_iteration(const MixtureDistribution& dist, int j, int d, int p, int grid_points);

}  // namespace jury
