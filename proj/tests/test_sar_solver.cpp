#include <chrono>
#include <cmath>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "jury/oracle.hpp"
#include "jury/sar_solver.hpp"

using namespace jury;

namespace {

MixtureDistribution example_mixture() {
  return MixtureDistribution({{0.1, Component(Uniform{0.0, 0.5})}, {0.9, Component(Uniform{0.5, 1.0})}});
}

std::vector<MixtureDistribution> canon() {
  return {MixtureDistribution::uniform(0, 1),
          example_mixture(),
          MixtureDistribution({{0.25, Component(BetaShape{1, 5})}, {0.75, Component(BetaShape{5, 1})}}),
          MixtureDistribution({{0.2, Component(BetaShape{2, 4})}, {0.8, Component(BetaShape{4, 2})}}),
          MixtureDistribution({{0.75, Component(Uniform{0.0, 0.1})}, {0.25, Component(Uniform{0.9, 1.0})}})};
}

}  // namespace

TEST_CASE("uniform j=d=p=1 by hand") {
  const auto t = solve(MixtureDistribution::uniform(0, 1), 1, 1, 1);
  CHECK(t.value({1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.value({1, 1, 0}) == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(t.value({1, 0, 1}) == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(*t.thresholds({1, 1, 0}).defendant == doctest::Approx(0.5));
  CHECK(*t.thresholds({1, 0, 1}).plaintiff == doctest::Approx(0.5));
  const auto root = t.thresholds(t.root());
  CHECK(std::fabs(*root.plaintiff - 0.375) < 1e-9);
  CHECK(std::fabs(*root.defendant - 0.625) < 1e-9);
  CHECK(std::fabs(t.value(t.root()) - 0.5) < 1e-9);
}

TEST_CASE("two-group example") {
  const auto t = solve(example_mixture(), 1, 1, 1);
  CHECK(t.value({1, 1, 0}) == doctest::Approx(0.619).epsilon(1e-12));
  CHECK(t.value({1, 0, 1}) == doctest::Approx(0.781).epsilon(1e-12));
  CHECK(*t.thresholds({1, 1, 0}).defendant == doctest::Approx(0.70).epsilon(1e-12));
  CHECK(*t.thresholds({1, 0, 1}).plaintiff == doctest::Approx(0.70).epsilon(1e-12));
  CHECK_FALSE(t.thresholds({1, 0, 1}).defendant.has_value());
  CHECK(*t.thresholds({1, 1, 1}).plaintiff == doctest::Approx(0.619).epsilon(1e-12));
  CHECK(*t.thresholds({1, 1, 1}).defendant == doctest::Approx(0.781).epsilon(1e-12));
}

TEST_CASE("no challenges gives mu^kappa") {
  for (const auto& d : canon()) {
    const auto t = solve(d, 12, 0, 0);
    for (int k = 0; k <= 12; ++k) CHECK(std::fabs(t.value({k, 0, 0}) - std::pow(d.mean(), k)) < 1e-12);
  }
}

TEST_CASE("table invariants") {
  for (const auto& d : canon()) {
    CAPTURE(d.describe());
    const auto t = solve(d, 6, 4, 3);
    CHECK(t.size() == 7u * 5u * 4u);
    for (int k = 0; k <= 6; ++k) {
      for (int dd = 0; dd <= 4; ++dd) {
        for (int pp = 0; pp <= 3; ++pp) {
          const double v = t.value({k, dd, pp});
          CHECK(v > 0.0);
          CHECK(v <= 1.0);
          if (k == 0) CHECK(v == 1.0);
          const auto th = t.thresholds({k, dd, pp});
          CHECK(th.plaintiff.has_value() == (k > 0 && pp > 0));
          CHECK(th.defendant.has_value() == (k > 0 && dd > 0));
          if (th.plaintiff && th.defendant) CHECK(*th.plaintiff < *th.defendant);
          if (dd > 0) CHECK(v <= t.value({k, dd - 1, pp}) + 1e-15);
          if (pp > 0) CHECK(v >= t.value({k, dd, pp - 1}) - 1e-15);
        }
      }
    }
  }
}

TEST_CASE("expectation and subtraction forms agree") {
  // Where the continuation ratios fall inside [0, 1] the value also equals
  // (V_d or V_accept) - V_accept * integral of F between the thresholds.
  int checked = 0;
  for (const auto& d : canon()) {
    const auto t = solve(d, 8, 5, 5);
    for (int k = 1; k <= 8; ++k) {
      for (int dd = 0; dd <= 5; ++dd) {
        for (int pp = 0; pp <= 5; ++pp) {
          const SubgameKey key{k, dd, pp};
          const double w = t.value({k - 1, dd, pp});
          const double rp = pp > 0 ? t.raw_plaintiff_ratio(key) : 0.0;
          const double rd = dd > 0 ? t.raw_defendant_ratio(key) : 1.0;
          if (rp < 0.0 || rp > 1.0 || rd < 0.0 || rd > 1.0) continue;
          const double base = dd > 0 ? t.value({k, dd - 1, pp}) : w;
          CHECK(std::fabs(t.value(key) - (base - w * d.integral_cdf(rp, rd))) < 1e-8);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("lookups outside the table throw") {
  const auto t = solve(MixtureDistribution::uniform(0, 1), 2, 1, 1);
  CHECK_THROWS_AS(t.value({3, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS(t.thresholds({1, 2, 0}), std::out_of_range);
  CHECK_THROWS_AS(t.value({-1, 0, 0}), std::out_of_range);
  CHECK_FALSE(t.contains({0, 0, 2}));
  CHECK(t.contains({2, 1, 1}));
}

TEST_CASE("csv export") {
  const auto t = solve(MixtureDistribution::uniform(0, 1), 1, 1, 1);
  std::ostringstream os;
  t.write_csv(os);
  const std::string s = os.str();
  CHECK(s.rfind("kappa,delta,pi,value,t_p,t_d\n", 0) == 0);
  CHECK(s.find("1,0,0,0.5,,\n") != std::string::npos);
  CHECK(s.find("1,1,1,0.5,0.375,0.625") != std::string::npos);
}

TEST_CASE("solver agrees with grid value iteration") {
  for (const auto& d : canon()) {
    for (auto [j, dd, pp] : {std::tuple{1, 1, 1}, std::tuple{2, 3, 1}, std::tuple{3, 3, 3}}) {
      CAPTURE(d.describe());
      const auto a = solve(d, j, dd, pp);
      const auto g = grid_value_iteration(d, j, dd, pp, 20001);
      for (int k = 0; k <= j; ++k) {
        for (int x = 0; x <= dd; ++x) {
          for (int y = 0; y <= pp; ++y) {
            CHECK(std::fabs(a.value({k, x, y}) - g.value({k, x, y})) <= 1e-4);
            const auto ta = a.thresholds({k, x, y}), tg = g.thresholds({k, x, y});
            if (ta.plaintiff) CHECK(std::fabs(*ta.plaintiff - *tg.plaintiff) <= 1e-3);
            if (ta.defendant) CHECK(std::fabs(*ta.defendant - *tg.defendant) <= 1e-3);
          }
        }
      }
    }
  }
}

TEST_CASE("j=12, d=p=6 table is fast") {
  const auto d = canon()[3];
  const auto start = std::chrono::steady_clock::now();
  const auto t = solve(d, 12, 6, 6);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(t.size() == 13u * 7u * 7u);
  CHECK(secs < 1.0);
}

TEST_CASE("unequal challenge counts") {
  const auto t = solve(MixtureDistribution::uniform(0, 1), 3, 0, 4);
  CHECK_FALSE(t.thresholds(t.root()).defendant.has_value());
  CHECK(t.value(t.root()) > std::pow(0.5, 3));
  const auto u = solve(MixtureDistribution::uniform(0, 1), 3, 4, 0);
  CHECK(u.value(u.root()) < std::pow(0.5, 3));
}
