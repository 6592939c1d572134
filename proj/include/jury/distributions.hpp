#pragma once

#include <string>
#include <variant>
#include <vector>

#include "jury/rng.hpp"

namespace jury {

struct Uniform {
  double lo;
  double hi;
};

struct BetaShape {
  double alpha;
  double beta;
};

/// A single uniform or beta law on [0, 1].
class Component {
 public:
  Component(Uniform u);
  Component(BetaShape b);

  bool is_uniform() const { return std::holds_alternative<Uniform>(law_); }
  const std::variant<Uniform, BetaShape>& law() const { return law_; }

  double pdf(double c) const;
  double cdf(double c) const;
  double mean() const;
  /// \int_a^b c f(c) dc
  double partial_expectation(double a, double b) const;
  double sample(Rng& rng) const;

 private:
  std::variant<Uniform, BetaShape> law_;
  double log_norm_ = 0.0;        // log B(alpha, beta)
  double log_norm_shift_ = 0.0;  // log B(alpha + 1, beta)
};

struct WeightedComponent {
  double weight;
  Component component;
};

/**
 * Conviction-probability law: a finite mixture of uniform and beta laws.
 *
 * Immutable after construction. Weights must be positive and sum to one
 * within 1e-12. The integrals used by the equilibrium recursion
 * (partial_expectation, integral_cdf) are closed forms for both families:
 * uniforms integrate piecewise-linearly and beta components reduce to
 * incomplete beta functions of shifted shape.
 */
class MixtureDistribution {
 public:
  explicit MixtureDistribution(std::vector<WeightedComponent> components);

  static MixtureDistribution uniform(double lo, double hi);
  static MixtureDistribution beta(double alpha, double beta);

  const std::vector<WeightedComponent>& components() const { return components_; }

  /// Density; right-continuous at interior uniform knots.
  double pdf(double c) const;
  double cdf(double c) const;
  /// Smallest c with cdf(c) >= q.
  double quantile(double q) const;
  double mean() const;
  /// \int_a^b F(c) dc, 0 <= a <= b <= 1.
  double integral_cdf(double a, double b) const;
  /// \int_a^b c f(c) dc, 0 <= a <= b <= 1.
  double partial_expectation(double a, double b) const;
  double sample(Rng& rng) const;

  /// Interior breakpoints of the density (uniform endpoints strictly inside (0, 1)).
  std::vector<double> knots() const;

  std::string describe() const;

 private:
  std::vector<WeightedComponent> components_;
  std::vector<double> cumulative_weights_;
};

/// Density of the k-th smallest of w iid draws:
/// k * C(w, k) * f(c) * F(c)^(k-1) * (1 - F(c))^(w-k).
double order_statistic_pdf(const MixtureDistribution& dist, int k, int w, double c);

enum class Group : unsigned char { a, b };

/// Two-group population: group a (the minority in most experiments) with
/// share r, and group b with share 1 - r.
class GroupModel {
 public:
  GroupModel(double r, MixtureDistribution dist_a, MixtureDistribution dist_b);

  double r() const { return r_; }
  const MixtureDistribution& dist_a() const { return dist_a_; }
  const MixtureDistribution& dist_b() const { return dist_b_; }
  const MixtureDistribution& dist(Group g) const { return g == Group::a ? dist_a_ : dist_b_; }
  /// r * C_a + (1 - r) * C_b
  const MixtureDistribution& pooled() const { return pooled_; }

 private:
  double r_;
  MixtureDistribution dist_a_;
  MixtureDistribution dist_b_;
  MixtureDistribution pooled_;
};

}  // namespace jury
