#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "jury/distributions.hpp"
#include "jury/metrics.hpp"
#include "jury/rng.hpp"

using namespace jury;

namespace {

MixtureDistribution example_mixture() {
  return MixtureDistribution({{0.1, Component(Uniform{0.0, 0.5})}, {0.9, Component(Uniform{0.5, 1.0})}});
}

MixtureDistribution beta_mix(double r, double a1, double b1, double a2, double b2) {
  return MixtureDistribution({{r, Component(BetaShape{a1, b1})}, {1 - r, Component(BetaShape{a2, b2})}});
}

std::vector<MixtureDistribution> canon() {
  return {MixtureDistribution::uniform(0, 1),
          example_mixture(),
          beta_mix(0.25, 1, 5, 5, 1),
          beta_mix(0.25, 2, 4, 4, 2),
          beta_mix(0.1, 3, 4, 4, 3),
          MixtureDistribution({{0.75, Component(Uniform{0.0, 0.1})}, {0.25, Component(Uniform{0.9, 1.0})}}),
          MixtureDistribution({{0.5, Component(Uniform{0.2, 0.6})}, {0.5, Component(BetaShape{0.7, 1.8})}})};
}

// Quadrature across the density's breakpoints; tanh-sinh copes with Beta(a<1) endpoints.
template <class Fn>
double integrate(const MixtureDistribution& dist, Fn fn, double a, double b) {
  std::vector<double> cuts{a};
  for (double k : dist.knots()) {
    if (k > a && k < b) cuts.push_back(k);
  }
  cuts.push_back(b);
  static boost::math::quadrature::tanh_sinh<double> quad;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) total += quad.integrate(fn, cuts[i], cuts[i + 1], 1e-13);
  }
  return total;
}

}  // namespace

TEST_CASE("example mixture values") {
  const auto m = example_mixture();
  CHECK(m.pdf(0.25) == doctest::Approx(0.2));
  CHECK(m.pdf(0.75) == doctest::Approx(1.8));
  CHECK(m.pdf(0.5) == doctest::Approx(1.8));  // right-continuous at the knot
  CHECK(m.cdf(0.25) == doctest::Approx(0.05));
  CHECK(m.cdf(0.70) == doctest::Approx(0.46));
  CHECK(m.quantile(0.05) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(m.quantile(0.95) == doctest::Approx(0.97222222222).epsilon(1e-9));
  CHECK(m.mean() == doctest::Approx(0.7));
  CHECK(m.integral_cdf(0, 0.7) == doctest::Approx(0.081).epsilon(1e-12));
  CHECK(m.partial_expectation(0, 0.7) == doctest::Approx(0.241).epsilon(1e-12));
  CHECK(m.knots() == std::vector<double>{0.5});
}

TEST_CASE("single-law values") {
  const auto u = MixtureDistribution::uniform(0, 1);
  CHECK(u.pdf(0.7) == 1.0);
  CHECK(u.pdf(1.0) == 1.0);
  CHECK(u.quantile(0.5) == doctest::Approx(0.5));
  CHECK(u.mean() == doctest::Approx(0.5));
  CHECK(u.integral_cdf(0.375, 0.625) == doctest::Approx(0.125));
  CHECK(u.partial_expectation(0, 1) == doctest::Approx(0.5));

  const auto b51 = MixtureDistribution::beta(5, 1);
  CHECK(b51.pdf(0.5) == doctest::Approx(0.3125));
  CHECK(b51.mean() == doctest::Approx(5.0 / 6));
  const auto b15 = MixtureDistribution::beta(1, 5);
  for (double c : {0.0, 0.1, 0.33, 0.8, 1.0}) CHECK(b15.cdf(c) == doctest::Approx(1 - std::pow(1 - c, 5)).epsilon(1e-12));
}

TEST_CASE("empty and reversed intervals") {
  for (const auto& d : canon()) {
    CHECK(d.integral_cdf(0.3, 0.3) == 0.0);
    CHECK(d.partial_expectation(0.3, 0.3) == 0.0);
    CHECK_THROWS_AS(d.integral_cdf(0.6, 0.2), std::domain_error);
    CHECK_THROWS_AS(d.partial_expectation(0.6, 0.2), std::domain_error);
  }
  const auto u = MixtureDistribution::uniform(0, 1);
  CHECK_THROWS_AS(u.pdf(-0.1), std::domain_error);
  CHECK_THROWS_AS(u.cdf(1.1), std::domain_error);
}

TEST_CASE("construction rejects bad laws") {
  CHECK_THROWS(MixtureDistribution({{0.5, Component(Uniform{0, 1})}, {0.4, Component(Uniform{0, 1})}}));
  CHECK_THROWS(MixtureDistribution({{0.0, Component(Uniform{0, 1})}, {1.0, Component(Uniform{0, 1})}}));
  CHECK_THROWS(MixtureDistribution({}));
  CHECK_THROWS(Component(Uniform{0.6, 0.4}));
  CHECK_THROWS(Component(Uniform{-0.1, 0.4}));
  CHECK_THROWS(Component(BetaShape{0.0, 1.0}));
  CHECK_THROWS(GroupModel(0.0, MixtureDistribution::uniform(0, 1), MixtureDistribution::uniform(0, 1)));
  CHECK_THROWS(GroupModel(1.0, MixtureDistribution::uniform(0, 1), MixtureDistribution::uniform(0, 1)));
}

TEST_CASE("density integrates to one and quantile inverts cdf") {
  for (const auto& d : canon()) {
    CAPTURE(d.describe());
    CHECK(integrate(d, [&](double c) { return d.pdf(c); }, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.cdf(0.0) == 0.0);
    CHECK(d.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double f = d.cdf(i / 200.0);
      REQUIRE(f >= prev - 1e-15);
      prev = f;
    }
    for (int q = 1; q <= 99; ++q) {
      const double c = d.quantile(q / 100.0);
      // Flat stretches of the cdf (gaps between uniform supports) do not occur at these q.
      CHECK(std::fabs(d.cdf(c) - q / 100.0) < 1e-9);
    }
  }
}

TEST_CASE("closed-form integrals agree with quadrature") {
  std::mt19937_64 gen(20240917);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& d : canon()) {
    CAPTURE(d.describe());
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double a = unit(gen), b = unit(gen);
      if (a > b) std::swap(a, b);
      const double ic = integrate(d, [&](double c) { return d.cdf(c); }, a, b);
      const double pe = integrate(d, [&](double c) { return c * d.pdf(c); }, a, b);
      worst = std::max({worst, std::fabs(ic - d.integral_cdf(a, b)), std::fabs(pe - d.partial_expectation(a, b))});
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("order statistic density") {
  const auto u = MixtureDistribution::uniform(0, 1);
  for (double c : {0.0, 0.2, 0.5, 0.9}) CHECK(order_statistic_pdf(u, 2, 3, c) == doctest::Approx(6 * c * (1 - c)));
  for (const auto& d : canon()) {
    for (double c : {0.05, 0.3, 0.77}) CHECK(order_statistic_pdf(d, 1, 1, c) == doctest::Approx(d.pdf(c)));
  }
  CHECK_THROWS_AS(order_statistic_pdf(u, 0, 3, 0.5), std::domain_error);
  CHECK_THROWS_AS(order_statistic_pdf(u, 4, 3, 0.5), std::domain_error);
}

TEST_CASE("mirror-image pairs") {
  // f_a(c) = f_b(1 - c): order statistics mirror, and so do the cdfs.
  const std::pair<double, double> shapes[] = {{1, 5}, {2, 4}, {3, 4}};
  for (auto [lo, hi] : shapes) {
    const auto a = MixtureDistribution::beta(lo, hi);
    const auto b = MixtureDistribution::beta(hi, lo);
    double worst_cdf = 0.0, worst_os = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double c = i / 1000.0;
      worst_cdf = std::max(worst_cdf, std::fabs(a.cdf(c) - (1 - b.cdf(1 - c))));
      for (int w = 1; w <= 6; ++w) {
        for (int k = 1; k <= w; ++k) {
          worst_os = std::max(worst_os, std::fabs(order_statistic_pdf(a, k, w, c) - order_statistic_pdf(b, w - k + 1, w, 1 - c)));
        }
      }
    }
    CHECK(worst_cdf < 1e-9);
    CHECK(worst_os < 1e-9);
  }
}

TEST_CASE("pooled law is the weighted mixture") {
  const GroupModel m(0.25, MixtureDistribution::beta(1, 5), example_mixture());
  for (int i = 0; i <= 100; ++i) {
    const double c = i / 100.0;
    CHECK(m.pooled().pdf(c) == doctest::Approx(0.25 * m.dist_a().pdf(c) + 0.75 * m.dist_b().pdf(c)).epsilon(1e-14));
  }
  CHECK(&m.dist(Group::a) == &m.dist_a());
}

TEST_CASE("sampling") {
  SUBCASE("support") {
    Rng rng(1);
    const auto d = MixtureDistribution::uniform(0.5, 1);
    for (int i = 0; i < 10000; ++i) {
      const double x = d.sample(rng);
      REQUIRE(x >= 0.5);
      REQUIRE(x <= 1.0);
    }
  }
  SUBCASE("mean of Beta(2,4)") {
    Rng rng(2);
    const auto d = MixtureDistribution::beta(2, 4);
    double sum = 0.0;
    for (int i = 0; i < 1000000; ++i) sum += d.sample(rng);
    CHECK(std::fabs(sum / 1e6 - 1.0 / 3) < 0.001);
  }
  SUBCASE("determinism") {
    const auto d = canon()[4];
    Rng a(77, 3), b(77, 3);
    for (int i = 0; i < 1000; ++i) REQUIRE(d.sample(a) == d.sample(b));
  }
  SUBCASE("Kolmogorov-Smirnov against the cdf") {
    for (const auto& d : canon()) {
      CAPTURE(d.describe());
      Rng rng(99);
      const int n = 1000000;
      std::vector<double> xs(n);
      for (auto& x : xs) x = d.sample(rng);
      std::sort(xs.begin(), xs.end());
      double dmax = 0.0;
      for (int i = 0; i < n; ++i) {
        const double f = d.cdf(xs[i]);
        dmax = std::max({dmax, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
      }
      // 99% asymptotic band: 1.628 / sqrt(n).
      CHECK(dmax < 1.628 / std::sqrt(static_cast<double>(n)));
    }
  }
}
