#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jury/distributions.hpp"
#include "jury/sar_solver.hpp"

namespace jury {

// Independent ground truth for tiny instances. Nothing here calls the
// simulator, and grid_value_iteration does not use integral_cdf.

/// The four thresholds of the j = d = p = 1 Strike-and-Replace tree.
struct Tree111Thresholds {
  double root_plaintiff;    // t_P(1,1,1)
  double root_defendant;    // t_D(1,1,1)
  double after_plaintiff;   // t_D(1,1,0): defendant's threshold once P has challenged
  double after_defendant;   // t_P(1,0,1): plaintiff's threshold once D has challenged

  static Tree111Thresholds from_table(const EquilibriumTable& table);
};

struct PathProbability {
  std::string path;
  double probability;
};

/**
 * Exact outcome of j = d = p = 1 Strike-and-Replace, integrated in closed form.
 *
 * The selected juror's density is f(c) w(c) with path weight
 *   w(c) = 1[t_P <= c <= t_D]
 *        + F(t_P) (1[c <= t_D'] + 1 - F(t_D'))
 *        + (1 - F(t_D)) (1[c >= t_P'] + F(t_P'))
 * where primes mark the second-round thresholds.
 */
class ExactOutcome {
 public:
  ExactOutcome(const GroupModel& model, const Tree111Thresholds& thresholds);

  const Tree111Thresholds& thresholds() const { return t_; }
  /// Leaf probabilities of the game tree (five leaves).
  std::vector<PathProbability> paths() const;
  /// Round-one branch probabilities: plaintiff challenge, accept, defendant challenge.
  std::vector<PathProbability> root_branches() const;

  double prob_minority() const;
  /// P(selected c <= c)
  double prob_selected_at_most(double c) const;
  /// P(selected c >= c)
  double prob_selected_at_least(double c) const { return 1.0 - prob_selected_at_most(c); }
  double selected_density(double c) const;
  double selected_mean() const;

 private:
  double weighted_mass(const MixtureDistribution& dist, double c) const;
  double path_weight(double c) const;

  GroupModel model_;
  Tree111Thresholds t_;
};

/// Requires uniform components in both groups; throws std::invalid_argument otherwise.
ExactOutcome exact_game_tree_111(const GroupModel& model, const EquilibriumTable& table);
ExactOutcome exact_game_tree_111(const GroupModel& model, const Tree111Thresholds& thresholds);

/// P(struck seats at least x jurors with c' <= c) = P(Bi(n, F(c)) >= x + p),
/// summed with exact integer binomial coefficients.
double exact_str_order_stat(const MixtureDistribution& dist, int j, int d, int p, double c, int x);

/// Value iteration on a uniform grid of cell midpoints. Cell masses come from
/// the density; each subgame value is the explicit expectation of the
/// best-response outcome over cells and thresholds are the cell edges where
/// a party's best response switches.
EquilibriumTable grid_value_iteration(const MixtureDistribution& dist, int j, int d, int p, int grid_points);

struct DiscreteAtom {
  double c;
  Group group;
  double probability;
};

struct ExactRanStats {
  /// P(exactly m group-a jurors), m = 0..j
  std::vector<double> minority_count_pmf;
  /// P(exactly m jurors with c <= threshold), m = 0..j
  std::vector<double> below_count_pmf;
  /// Expected share of the jury drawn from each atom.
  std::vector<double> atom_share;
};

/// Random procedure by brute force: every panel over the discrete support and
/// every j-subset. Refuses (std::length_error) beyond 10^6 panel states.
ExactRanStats exhaustive_ran(std::span<const DiscreteAtom> support, int j, int d, int p, double threshold);

struct OracleCheck {
  std::string name;
  bool passed;
  std::string detail;
};

/// Pre-flight consistency checks: solver vs grid, tree normalisation and
/// mean, struck closed form vs exact order statistics.
std::vector<OracleCheck> run_oracle_checks();

struct ReportRow {
  std::string quantity;
  std::optional<double> paper_value;
  double computed_value;
};

/// Every probability of the two-group j = d = p = 1 example next to the
/// published figure where one exists.
std::vector<ReportRow> sec3_report();

/// The example's population: r = 0.1, C_a ~ U[0, 0.5], C_b ~ U[0.5, 1].
GroupModel sec3_model();

}  // namespace jury
