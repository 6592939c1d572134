#include <cmath>
#include <numeric>

#include "doctest.h"
#include "jury/oracle.hpp"
#include "jury/simulation.hpp"

using namespace jury;

TEST_CASE("example tree branches") {
  const GroupModel m = sec3_model();
  const auto table = solve(m.pooled(), 1, 1, 1);
  const auto tree = exact_game_tree_111(m, table);
  double total = 0.0;
  for (const auto& path : tree.paths()) total += path.probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  const auto br = tree.root_branches();
  REQUIRE(br.size() == 3);
  CHECK(br[0].probability == doctest::Approx(0.3142).epsilon(1e-3));
  CHECK(tree.selected_mean() == doctest::Approx(table.value({1, 1, 1})).epsilon(1e-12));
  CHECK(std::fabs(tree.prob_minority() - 0.0665) < 5e-4);

  // With the printed root threshold 0.788 the middle branches shift to the printed ones.
  Tree111Thresholds printed = tree.thresholds();
  printed.root_defendant = 0.788;
  const auto alt = exact_game_tree_111(m, printed);
  CHECK(std::fabs(alt.root_branches()[1].probability - 0.3042) < 5e-4);
  CHECK(std::fabs(alt.root_branches()[2].probability - 0.3816) < 5e-4);
  CHECK(std::fabs(alt.prob_minority() - 0.0659) < 5e-4);
}

TEST_CASE("tree tails") {
  const GroupModel m = sec3_model();
  const auto tree = exact_game_tree_111(m, solve(m.pooled(), 1, 1, 1));
  CHECK(tree.prob_selected_at_most(0.0) == 0.0);
  CHECK(tree.prob_selected_at_most(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(tree.prob_selected_at_most(0.25) - 0.03326) < 5e-5);
  CHECK(std::fabs(tree.prob_selected_at_least(0.94) - 0.0805) < 5e-4);
  // Density integrates to the cdf.
  double acc = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) acc += tree.selected_density((i + 0.5) / n) / n;
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("non-uniform groups are refused") {
  const GroupModel m(0.25, MixtureDistribution::beta(1, 5), MixtureDistribution::beta(5, 1));
  CHECK_THROWS_AS(exact_game_tree_111(m, solve(m.pooled(), 1, 1, 1)), std::invalid_argument);
  const GroupModel u(0.5, MixtureDistribution::uniform(0, 1), MixtureDistribution::uniform(0, 1));
  CHECK_THROWS_AS(exact_game_tree_111(u, solve(u.pooled(), 2, 1, 1)), std::invalid_argument);
}

TEST_CASE("struck order statistics") {
  const auto pooled = sec3_model().pooled();
  CHECK(std::fabs(exact_str_order_stat(pooled, 1, 1, 1, 0.25, 1) - 0.00725) < 1e-12);
  const auto u = MixtureDistribution::uniform(0, 1);
  CHECK(exact_str_order_stat(u, 1, 1, 1, 0.25, 1) == doctest::Approx(0.15625).epsilon(1e-12));
  CHECK(exact_str_order_stat(u, 3, 2, 2, 1.0, 2) == doctest::Approx(1.0));
  CHECK(exact_str_order_stat(u, 3, 2, 2, 0.4, 4) == 0.0);
  CHECK_THROWS(exact_str_order_stat(u, 3, 2, 2, 0.4, 0));
}

TEST_CASE("grid value iteration") {
  const auto g = grid_value_iteration(MixtureDistribution::uniform(0, 1), 1, 1, 1, 20001);
  CHECK(std::fabs(g.value({1, 1, 1}) - 0.5) < 1e-4);
  CHECK(std::fabs(*g.thresholds({1, 1, 1}).plaintiff - 0.375) < 1e-3);
  CHECK(std::fabs(*g.thresholds({1, 1, 1}).defendant - 0.625) < 1e-3);
  const auto e = grid_value_iteration(sec3_model().pooled(), 1, 1, 1, 20001);
  CHECK(std::fabs(e.value({1, 1, 0}) - 0.619) < 1e-4);
  CHECK(std::fabs(*e.thresholds({1, 1, 0}).defendant - 0.70) < 1e-3);
  CHECK_THROWS(grid_value_iteration(MixtureDistribution::uniform(0, 1), 1, 1, 1, 101));
}

TEST_CASE("exhaustive random selection") {
  const DiscreteAtom support[] = {{0.2, Group::a, 0.1}, {0.8, Group::b, 0.9}};
  const auto s = exhaustive_ran(support, 1, 1, 1, 0.5);
  CHECK(s.minority_count_pmf[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(s.below_count_pmf[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(s.atom_share[0] == doctest::Approx(0.1).epsilon(1e-12));

  const DiscreteAtom three[] = {{0.1, Group::a, 0.2}, {0.5, Group::b, 0.5}, {0.9, Group::b, 0.3}};
  const auto t = exhaustive_ran(three, 3, 2, 2, 0.5);
  CHECK(std::accumulate(t.minority_count_pmf.begin(), t.minority_count_pmf.end(), 0.0) == doctest::Approx(1.0));
  // Binomial by exchangeability.
  CHECK(t.minority_count_pmf[0] == doctest::Approx(std::pow(0.8, 3)).epsilon(1e-12));
  CHECK(t.below_count_pmf[3] == doctest::Approx(std::pow(0.7, 3)).epsilon(1e-12));

  const DiscreteAtom many[] = {{0.1, Group::a, 0.25}, {0.3, Group::a, 0.25}, {0.6, Group::b, 0.25}, {0.9, Group::b, 0.25}};
  CHECK_THROWS_AS(exhaustive_ran(many, 6, 2, 3, 0.5), std::length_error);
}

TEST_CASE("uniform tree against simulation") {
  const GroupModel m(0.3, MixtureDistribution::uniform(0, 0.3), MixtureDistribution::uniform(0.3, 1));
  const auto tree = exact_game_tree_111(m, solve(m.pooled(), 1, 1, 1));
  SimulationRequest req{.model = m, .j = 1, .d = 1, .p = 1, .procedures = {Procedure::strike_replace},
                        .n_sims = 1000000, .seed = 91, .thresholds = {0.1, 0.3, 0.5, 0.8}};
  const auto res = simulate_parallel(req, 4);
  const auto& s = res.at(Procedure::strike_replace);
  for (std::size_t i = 0; i < req.thresholds.size(); ++i) {
    const auto e = s.prob_at_least(1, i);
    CAPTURE(req.thresholds[i]);
    CHECK(std::fabs(e.value - tree.prob_selected_at_most(req.thresholds[i])) < 3 * e.std_error + 1e-12);
  }
  const auto mino = s.minority_stats().mean_fraction;
  CHECK(std::fabs(mino.value - tree.prob_minority()) < 3 * mino.std_error);
}

TEST_CASE("pre-flight checks pass") {
  for (const auto& c : run_oracle_checks()) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("example report") {
  const auto rows = sec3_report();
  bool saw_minority = false;
  for (const auto& r : rows) {
    if (r.quantity == "SAR P(minority)") {
      saw_minority = true;
      CHECK(std::fabs(r.computed_value - 0.0665) < 5e-4);
    }
    if (r.quantity == "STR P(minority)") CHECK(r.computed_value == doctest::Approx(0.028));
  }
  CHECK(saw_minority);
}
