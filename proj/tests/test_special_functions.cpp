#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <cmath>

#include "doctest.h"
#include "jury/special_functions.hpp"

using namespace jury;

TEST_CASE("incomplete beta against boost") {
  const double shapes[] = {0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 7.5, 20.0, 60.0};
  double worst = 0.0;
  for (double a : shapes) {
    for (double b : shapes) {
      for (int i = 0; i <= 50; ++i) {
        const double x = i / 50.0;
        worst = std::max(worst, std::fabs(incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("integer path agrees with the continued fraction") {
  for (int a = 1; a <= 8; ++a) {
    for (int b = 1; b <= 8; ++b) {
      for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        CHECK(std::fabs(incomplete_beta_integer(a, b, x) - incomplete_beta(a, b, x)) < 1e-12);
      }
    }
  }
}

TEST_CASE("incomplete beta edge values") {
  CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
  CHECK(incomplete_beta(1, 5, 0.3) == doctest::Approx(1 - std::pow(0.7, 5)));
  CHECK(incomplete_beta(5, 1, 0.5) == doctest::Approx(std::pow(0.5, 5)));
  CHECK_THROWS(incomplete_beta(0.0, 1.0, 0.5));
  CHECK_THROWS(incomplete_beta(1.0, 1.0, 1.5));
}

TEST_CASE("log beta") {
  CHECK(std::exp(log_beta(2, 3)) == doctest::Approx(1.0 / 12));
  CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(M_PI)));
}

TEST_CASE("binomial tails") {
  CHECK(binom_tail(3, 0.05, 2) == doctest::Approx(0.00725).epsilon(1e-12));
  CHECK(binom_tail(3, 0.1, 2) == doctest::Approx(0.028).epsilon(1e-12));
  CHECK(binom_tail(12, 0.5, 7) == doctest::Approx(1586.0 / 4096).epsilon(1e-12));
  CHECK(binom_tail(5, 0.3, 0) == 1.0);
  CHECK(binom_tail(5, 0.3, 6) == 0.0);
  CHECK(binom_tail(5, 0.0, 1) == 0.0);
  CHECK(binom_tail(5, 1.0, 5) == 1.0);
  double sum = 0.0;
  for (int k = 0; k <= 9; ++k) sum += binom_pmf(9, 0.37, k);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("exact binomial coefficients") {
  for (int n = 0; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(static_cast<double>(choose_exact(n, k)) ==
            doctest::Approx(boost::math::binomial_coefficient<double>(n, k)).epsilon(1e-15));
    }
  }
  CHECK(choose_exact(5, 7) == 0);
  CHECK(half_tail_count(4, 0) == 16);
  CHECK(half_tail_count(4, 3) == 5);
  CHECK(half_tail_count(126, 0) == (uint128{1} << 126));
  CHECK_THROWS(choose_exact(127, 3));
}
