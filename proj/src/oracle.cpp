#include "jury/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "jury/metrics.hpp"
#include "jury/special_functions.hpp"

namespace jury {

// ---------------------------------------------------------------------------
// Exact j = d = p = 1 tree

Tree111Thresholds Tree111Thresholds::from_table(const EquilibriumTable& table) {
  if (table.jury_size() < 1 || table.defendant_challenges() < 1 || table.plaintiff_challenges() < 1) {
    throw std::invalid_argument("Tree111Thresholds: table must cover (1,1,1)");
  }
  const auto root = table.thresholds({1, 1, 1});
  return {*root.plaintiff, *root.defendant, *table.thresholds({1, 1, 0}).defendant,
          *table.thresholds({1, 0, 1}).plaintiff};
}

ExactOutcome::ExactOutcome(const GroupModel& model, const Tree111Thresholds& thresholds)
    : model_(model), t_(thresholds) {}

double ExactOutcome::weighted_mass(const MixtureDistribution& dist, double c) const {
  const auto& pooled = model_.pooled();
  const double f_p0 = pooled.cdf(t_.root_plaintiff);
  const double f_d0 = pooled.cdf(t_.root_defendant);
  const double f_d1 = pooled.cdf(t_.after_plaintiff);
  const double f_p1 = pooled.cdf(t_.after_defendant);
  const double h = dist.cdf(c);

  const double accept_first = std::max(0.0, dist.cdf(std::min(c, t_.root_defendant)) - dist.cdf(t_.root_plaintiff));
  const double after_p = f_p0 * (dist.cdf(std::min(c, t_.after_plaintiff)) + (1.0 - f_d1) * h);
  const double after_d = (1.0 - f_d0) * (std::max(0.0, h - dist.cdf(t_.after_defendant)) + f_p1 * h);
  return accept_first + after_p + after_d;
}

double ExactOutcome::path_weight(double c) const {
  const auto& pooled = model_.pooled();
  double w = 0.0;
  if (c >= t_.root_plaintiff && c <= t_.root_defendant) w += 1.0;
  w += pooled.cdf(t_.root_plaintiff) * ((c <= t_.after_plaintiff ? 1.0 : 0.0) + 1.0 - pooled.cdf(t_.after_plaintiff));
  w += (1.0 - pooled.cdf(t_.root_defendant)) *
       ((c >= t_.after_defendant ? 1.0 : 0.0) + pooled.cdf(t_.after_defendant));
  return w;
}

std::vector<PathProbability> ExactOutcome::root_branches() const {
  const auto& pooled = model_.pooled();
  const double f_p0 = pooled.cdf(t_.root_plaintiff);
  const double f_d0 = pooled.cdf(t_.root_defendant);
  return {{"P challenges", f_p0}, {"accept", f_d0 - f_p0}, {"D challenges", 1.0 - f_d0}};
}

std::vector<PathProbability> ExactOutcome::paths() const {
  const auto& pooled = model_.pooled();
  const double f_p0 = pooled.cdf(t_.root_plaintiff);
  const double f_d0 = pooled.cdf(t_.root_defendant);
  const double f_d1 = pooled.cdf(t_.after_plaintiff);
  const double f_p1 = pooled.cdf(t_.after_defendant);
  return {
      {"accept@1", f_d0 - f_p0},
      {"P@1 accept@2", f_p0 * f_d1},
      {"P@1 D@2 seat@3", f_p0 * (1.0 - f_d1)},
      {"D@1 accept@2", (1.0 - f_d0) * (1.0 - f_p1)},
      {"D@1 P@2 seat@3", (1.0 - f_d0) * f_p1},
  };
}

double ExactOutcome::prob_minority() const { return model_.r() * weighted_mass(model_.dist_a(), 1.0); }

double ExactOutcome::prob_selected_at_most(double c) const { return weighted_mass(model_.pooled(), c); }

double ExactOutcome::selected_density(double c) const { return model_.pooled().pdf(c) * path_weight(c); }

double ExactOutcome::selected_mean() const {
  const auto& pooled = model_.pooled();
  const double mu = pooled.mean();
  const double f_p0 = pooled.cdf(t_.root_plaintiff);
  const double f_d0 = pooled.cdf(t_.root_defendant);
  const double f_d1 = pooled.cdf(t_.after_plaintiff);
  const double f_p1 = pooled.cdf(t_.after_defendant);
  return pooled.partial_expectation(t_.root_plaintiff, t_.root_defendant) +
         f_p0 * (pooled.partial_expectation(0.0, t_.after_plaintiff) + (1.0 - f_d1) * mu) +
         (1.0 - f_d0) * (pooled.partial_expectation(t_.after_defendant, 1.0) + f_p1 * mu);
}

namespace {

void require_uniform(const MixtureDistribution& dist) {
  for (const auto& wc : dist.components()) {
    if (!wc.component.is_uniform()) {
      throw std::invalid_argument("exact_game_tree_111: only piecewise-uniform groups are supported");
    }
  }
}

}  // namespace

ExactOutcome exact_game_tree_111(const GroupModel& model, const Tree111Thresholds& thresholds) {
  require_uniform(model.dist_a());
  require_uniform(model.dist_b());
  return ExactOutcome(model, thresholds);
}

ExactOutcome exact_game_tree_111(const GroupModel& model, const EquilibriumTable& table) {
  if (table.jury_size() != 1 || table.defendant_challenges() != 1 || table.plaintiff_challenges() != 1) {
    throw std::invalid_argument("exact_game_tree_111: table must be solved for j = d = p = 1");
  }
  return exact_game_tree_111(model, Tree111Thresholds::from_table(table));
}

// ---------------------------------------------------------------------------
// Struck order statistics

double exact_str_order_stat(const MixtureDistribution& dist, int j, int d, int p, double c, int x) {
  if (x < 1) throw std::invalid_argument("exact_str_order_stat: x must be at least 1");
  if (x > j) return 0.0;
  const int n = j + d + p;
  const long double q = dist.cdf(c);
  const int first = std::max(0, x + p);
  long double sum = 0.0L;
  for (int k = first; k <= n; ++k) {
    sum += static_cast<long double>(choose_exact(n, k)) * std::pow(q, k) * std::pow(1.0L - q, n - k);
  }
  return static_cast<double>(std::min(sum, 1.0L));
}

// ---------------------------------------------------------------------------
// Grid value iteration

EquilibriumTable grid_value_iteration(const MixtureDistribution& dist, int j, int d, int p, int grid_points) {
  if (grid_points < 10001) throw std::invalid_argument("grid_value_iteration: need at least 10001 grid points");
  if (j < 1 || d < 0 || p < 0) throw std::invalid_argument("grid_value_iteration: invalid sizes");

  const int cells = grid_points - 1;
  const double h = 1.0 / cells;
  std::vector<double> mid(static_cast<std::size_t>(cells));
  std::vector<double> mass(static_cast<std::size_t>(cells));
  double total = 0.0;
  for (int k = 0; k < cells; ++k) {
    mid[k] = (k + 0.5) * h;
    mass[k] = dist.pdf(mid[k]) * h;
    total += mass[k];
  }
  for (double& m : mass) m /= total;

  EquilibriumTable table(j, d, p);
  for (int k = 0; k <= j; ++k) {
    for (int dl = 0; dl <= d; ++dl) {
      for (int pl = 0; pl <= p; ++pl) {
        const std::size_t i = table.index({k, dl, pl});
        if (k == 0) {
          table.values_[i] = 1.0;
          continue;
        }
        const double seat = table.values_[table.index({k - 1, dl, pl})];
        const double after_p = pl > 0 ? table.values_[table.index({k, dl, pl - 1})] : 0.0;
        const double after_d = dl > 0 ? table.values_[table.index({k, dl - 1, pl})] : 0.0;

        double value = 0.0;
        int last_p_challenge = -1;  // last cell the plaintiff strikes
        int first_d_challenge = cells;
        for (int cell = 0; cell < cells; ++cell) {
          const double accept = mid[cell] * seat;
          double outcome = accept;
          if (pl > 0 && accept < after_p) {
            outcome = after_p;
            last_p_challenge = cell;
          } else if (dl > 0 && accept > after_d) {
            outcome = after_d;
            first_d_challenge = std::min(first_d_challenge, cell);
          }
          value += mass[cell] * outcome;
        }
        table.values_[i] = value;
        if (pl > 0) table.t_p_[i] = (last_p_challenge + 1) * h;
        if (dl > 0) table.t_d_[i] = first_d_challenge * h;
      }
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Exhaustive random procedure

ExactRanStats exhaustive_ran(std::span<const DiscreteAtom> support, int j, int d, int p, double threshold) {
  const int n = j + d + p;
  if (support.empty()) throw std::invalid_argument("exhaustive_ran: empty support");
  if (j < 1 || n > 24) throw std::invalid_argument("exhaustive_ran: need 1 <= j and n <= 24");
  double states = 1.0;
  for (int i = 0; i < n; ++i) states *= static_cast<double>(support.size());
  if (states > 1e6) throw std::length_error("exhaustive_ran: more than 10^6 panel states");

  ExactRanStats out;
  out.minority_count_pmf.assign(static_cast<std::size_t>(j) + 1, 0.0);
  out.below_count_pmf.assign(static_cast<std::size_t>(j) + 1, 0.0);
  out.atom_share.assign(support.size(), 0.0);

  std::vector<unsigned> subsets;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) == j) subsets.push_back(mask);
  }
  const double subset_weight = 1.0 / static_cast<double>(subsets.size());

  const auto n_states = static_cast<std::size_t>(states);
  std::vector<std::size_t> atom_of(static_cast<std::size_t>(n));
  for (std::size_t state = 0; state < n_states; ++state) {
    std::size_t rest = state;
    double prob = 1.0;
    for (int pos = 0; pos < n; ++pos) {
      atom_of[pos] = rest % support.size();
      rest /= support.size();
      prob *= support[atom_of[pos]].probability;
    }
    if (prob == 0.0) continue;
    for (unsigned mask : subsets) {
      int minority = 0;
      int below = 0;
      for (int pos = 0; pos < n; ++pos) {
        if (!(mask & (1u << pos))) continue;
        const DiscreteAtom& atom = support[atom_of[pos]];
        if (atom.group == Group::a) ++minority;
        if (atom.c <= threshold) ++below;
        out.atom_share[atom_of[pos]] += prob * subset_weight / j;
      }
      out.minority_count_pmf[minority] += prob * subset_weight;
      out.below_count_pmf[below] += prob * subset_weight;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pre-flight checks and the two-group example

GroupModel sec3_model() {
  return GroupModel(0.1, MixtureDistribution::uniform(0.0, 0.5), MixtureDistribution::uniform(0.5, 1.0));
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<std::pair<std::string, MixtureDistribution>> check_distributions() {
  return {
      {"U[0,1]", MixtureDistribution::uniform(0.0, 1.0)},
      {"example mixture", sec3_model().pooled()},
      {"0.25*Beta(1,5)+0.75*Beta(5,1)",
       MixtureDistribution({{0.25, Component(BetaShape{1, 5})}, {0.75, Component(BetaShape{5, 1})}})},
      {"Beta(2,4)", MixtureDistribution::beta(2, 4)},
      {"0.75*U[0,0.1]+0.25*U[0.9,1]",
       MixtureDistribution({{0.75, Component(Uniform{0.0, 0.1})}, {0.25, Component(Uniform{0.9, 1.0})}})},
  };
}

}  // namespace

std::vector<OracleCheck> run_oracle_checks() {
  std::vector<OracleCheck> checks;

  for (const auto& [name, dist] : check_distributions()) {
    for (auto [j, d, p] : {std::tuple{1, 1, 1}, std::tuple{2, 1, 2}, std::tuple{3, 2, 1}}) {
      const EquilibriumTable exact = solve(dist, j, d, p);
      const EquilibriumTable grid = grid_value_iteration(dist, j, d, p, 20001);
      double value_gap = 0.0;
      double threshold_gap = 0.0;
      for (int k = 0; k <= j; ++k) {
        for (int dl = 0; dl <= d; ++dl) {
          for (int pl = 0; pl <= p; ++pl) {
            const SubgameKey key{k, dl, pl};
            value_gap = std::max(value_gap, std::fabs(exact.value(key) - grid.value(key)));
            if (k == 0) continue;
            const auto te = exact.thresholds(key);
            const auto tg = grid.thresholds(key);
            if (te.plaintiff) threshold_gap = std::max(threshold_gap, std::fabs(*te.plaintiff - *tg.plaintiff));
            if (te.defendant) threshold_gap = std::max(threshold_gap, std::fabs(*te.defendant - *tg.defendant));
          }
        }
      }
      std::ostringstream label;
      label << "solver vs grid, " << name << ", (j,d,p)=(" << j << "," << d << "," << p << ")";
      checks.push_back({label.str(), value_gap <= 1e-4 && threshold_gap <= 1e-3,
                        "max |dV| = " + fmt(value_gap) + ", max |dt| = " + fmt(threshold_gap)});
    }
  }

  const GroupModel uniform_groups(0.5, MixtureDistribution::uniform(0.0, 0.5), MixtureDistribution::uniform(0.5, 1.0));
  for (const auto& [name, model] : {std::pair{std::string("example"), sec3_model()},
                                    std::pair{std::string("U[0,1] halves"), uniform_groups}}) {
    const EquilibriumTable table = solve(model.pooled(), 1, 1, 1);
    const ExactOutcome tree = exact_game_tree_111(model, table);
    double total = 0.0;
    for (const auto& path : tree.paths()) total += path.probability;
    checks.push_back({"tree paths sum to one, " + name, std::fabs(total - 1.0) <= 1e-10, "sum = " + fmt(total)});
    const double gap = std::fabs(tree.selected_mean() - table.value({1, 1, 1}));
    checks.push_back({"tree mean equals root value, " + name, gap <= 1e-10, "gap = " + fmt(gap)});
    const double cdf_gap = std::fabs(tree.prob_selected_at_most(1.0) - 1.0);
    checks.push_back({"tree selected cdf reaches one, " + name, cdf_gap <= 1e-10, "gap = " + fmt(cdf_gap)});
  }

  double str_gap = 0.0;
  for (const auto& [name, dist] : check_distributions()) {
    for (double c : {0.05, 0.25, 0.5, 0.9}) {
      for (int x = 1; x <= 3; ++x) {
        const double closed = analytic_T_str(3, 2, 2, dist.cdf(c), x);
        str_gap = std::max(str_gap, std::fabs(closed - exact_str_order_stat(dist, 3, 2, 2, c, x)));
      }
    }
  }
  checks.push_back({"struck closed form vs exact order statistics", str_gap <= 1e-12, "max gap = " + fmt(str_gap)});
  return checks;
}

std::vector<ReportRow> sec3_report() {
  const GroupModel model = sec3_model();
  const MixtureDistribution& pooled = model.pooled();
  const EquilibriumTable table = solve(pooled, 1, 1, 1);
  const ExactOutcome tree = exact_game_tree_111(model, table);
  Tree111Thresholds published = tree.thresholds();
  published.root_defendant = 0.788;
  const ExactOutcome published_tree = exact_game_tree_111(model, published);

  const double r = model.r();
  std::vector<ReportRow> rows;
  // Struck: group composition of the three-juror panel.
  rows.push_back({"STR panel P(aaa)", 0.001, r * r * r});
  rows.push_back({"STR panel P(aab)", 0.027, 3 * r * r * (1 - r)});
  rows.push_back({"STR panel P(abb)", 0.243, 3 * r * (1 - r) * (1 - r)});
  rows.push_back({"STR panel P(bbb)", 0.729, (1 - r) * (1 - r) * (1 - r)});
  rows.push_back({"STR P(minority)", 0.03, binom_tail(3, r, 2)});

  const auto root = table.thresholds({1, 1, 1});
  rows.push_back({"SAR root t_P", 0.619, *root.plaintiff});
  rows.push_back({"SAR root t_D", 0.788, *root.defendant});
  rows.push_back({"SAR V(1,1,0)", 0.619, table.value({1, 1, 0})});
  rows.push_back({"SAR V(1,0,1)", std::nullopt, table.value({1, 0, 1})});
  rows.push_back({"SAR t_D(1,1,0)", 0.70, *table.thresholds({1, 1, 0}).defendant});
  rows.push_back({"SAR t_P(1,0,1)", 0.70, *table.thresholds({1, 0, 1}).plaintiff});
  rows.push_back({"SAR root value", std::nullopt, table.value({1, 1, 1})});

  const auto branches = tree.root_branches();
  const auto published_branches = published_tree.root_branches();
  const double printed_branch[] = {0.3142, 0.3042, 0.3816};
  for (std::size_t i = 0; i < branches.size(); ++i) {
    rows.push_back({"SAR round-1 " + branches[i].path, printed_branch[i], branches[i].probability});
    rows.push_back({"SAR round-1 " + branches[i].path + " (root t_D=0.788)", printed_branch[i],
                    published_branches[i].probability});
  }
  rows.push_back({"SAR round-2 P(D challenges | P challenged)", 0.54, 1.0 - pooled.cdf(table.thresholds({1, 1, 0}).defendant.value())});
  rows.push_back({"SAR round-2 P(P challenges | D challenged)", 0.46, pooled.cdf(table.thresholds({1, 0, 1}).plaintiff.value())});
  rows.push_back({"SAR P(minority)", 0.066, tree.prob_minority()});
  rows.push_back({"SAR P(minority) (root t_D=0.788)", 0.066, published_tree.prob_minority()});
  rows.push_back({"RAN P(minority)", 0.10, r});

  const double q05 = pooled.quantile(0.05);
  const double q95 = pooled.quantile(0.95);
  rows.push_back({"5th percentile", 0.25, q05});
  rows.push_back({"95th percentile", 0.94, q95});
  rows.push_back({"STR P(selected <= 5th pct)", 0.015, exact_str_order_stat(pooled, 1, 1, 1, q05, 1)});
  rows.push_back({"SAR P(selected <= 5th pct)", 0.033, tree.prob_selected_at_most(q05)});
  // Struck seats a juror >= c iff at least two of three panel members are.
  const double above_94 = 1.0 - pooled.cdf(0.94);
  const double above_q95 = 1.0 - pooled.cdf(q95);
  rows.push_back({"STR P(selected >= 0.94)", 0.076, binom_tail(3, above_94, 2)});
  rows.push_back({"SAR P(selected >= 0.94)", 0.083, tree.prob_selected_at_least(0.94)});
  rows.push_back({"STR P(selected >= 95th pct)", std::nullopt, binom_tail(3, above_q95, 2)});
  rows.push_back({"SAR P(selected >= 95th pct)", std::nullopt, tree.prob_selected_at_least(q95)});
  return rows;
}

}  // namespace jury
