#include "jury/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "jury/special_functions.hpp"

namespace jury {

namespace {

void check_probability(double c, const char* what) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error(std::string(what) + ": argument outside [0, 1]");
}

void check_bounds(double a, double b, const char* what) {
  check_probability(a, what);
  check_probability(b, what);
  if (a > b) throw std::domain_error(std::string(what) + ": reversed bounds");
}

}  // namespace

// ---------------------------------------------------------------------------
// Component

Component::Component(Uniform u) : law_(u) {
  if (!(u.lo >= 0.0 && u.hi <= 1.0 && u.lo < u.hi)) {
    throw std::invalid_argument("uniform component requires 0 <= lo < hi <= 1");
  }
}

Component::Component(BetaShape b) : law_(b) {
  if (!(b.alpha > 0.0) || !(b.beta > 0.0) || !std::isfinite(b.alpha) || !std::isfinite(b.beta)) {
    throw std::invalid_argument("beta component requires alpha, beta > 0");
  }
  log_norm_ = log_beta(b.alpha, b.beta);
  log_norm_shift_ = log_beta(b.alpha + 1.0, b.beta);
}

double Component::pdf(double c) const {
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    const bool inside = c >= u->lo && (c < u->hi || (c == u->hi && u->hi == 1.0));
    return inside ? 1.0 / (u->hi - u->lo) : 0.0;
  }
  const auto& b = std::get<BetaShape>(law_);
  auto edge = [](double shape) {
    if (shape == 1.0) return 1.0;
    return shape > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  if (c == 0.0) {
    const double e = edge(b.alpha);
    return e == 1.0 ? std::exp(-log_norm_) : e;
  }
  if (c == 1.0) {
    const double e = edge(b.beta);
    return e == 1.0 ? std::exp(-log_norm_) : e;
  }
  return std::exp((b.alpha - 1.0) * std::log(c) + (b.beta - 1.0) * std::log1p(-c) - log_norm_);
}

double Component::cdf(double c) const {
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    if (c <= u->lo) return 0.0;
    if (c >= u->hi) return 1.0;
    return (c - u->lo) / (u->hi - u->lo);
  }
  const auto& b = std::get<BetaShape>(law_);
  return incomplete_beta(b.alpha, b.beta, c);
}

double Component::mean() const {
  if (const auto* u = std::get_if<Uniform>(&law_)) return 0.5 * (u->lo + u->hi);
  const auto& b = std::get<BetaShape>(law_);
  return b.alpha / (b.alpha + b.beta);
}

double Component::partial_expectation(double a, double b) const {
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    const double lo = std::max(a, u->lo);
    const double hi = std::min(b, u->hi);
    if (lo >= hi) return 0.0;
    return (hi * hi - lo * lo) / (2.0 * (u->hi - u->lo));
  }
  if (a == b) return 0.0;
  // c * Beta(alpha, beta) density = [B(alpha+1, beta) / B(alpha, beta)] * Beta(alpha+1, beta) density.
  const auto& s = std::get<BetaShape>(law_);
  const double scale = std::exp(log_norm_shift_ - log_norm_);
  return scale * (incomplete_beta(s.alpha + 1.0, s.beta, b) - incomplete_beta(s.alpha + 1.0, s.beta, a));
}

double Component::sample(Rng& rng) const {
  if (const auto* u = std::get_if<Uniform>(&law_)) return u->lo + (u->hi - u->lo) * rng.uniform();
  const auto& b = std::get<BetaShape>(law_);
  return rng.beta(b.alpha, b.beta);
}

// ---------------------------------------------------------------------------
// MixtureDistribution

MixtureDistribution::MixtureDistribution(std::vector<WeightedComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("mixture requires at least one component");
  double total = 0.0;
  for (const auto& wc : components_) {
    if (!(wc.weight > 0.0)) throw std::invalid_argument("mixture weights must be positive");
    total += wc.weight;
    cumulative_weights_.push_back(total);
  }
  if (std::fabs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights must sum to 1");
}

MixtureDistribution MixtureDistribution::uniform(double lo, double hi) {
  return MixtureDistribution({{1.0, Component(Uniform{lo, hi})}});
}

MixtureDistribution MixtureDistribution::beta(double alpha, double beta) {
  return MixtureDistribution({{1.0, Component(BetaShape{alpha, beta})}});
}

double MixtureDistribution::pdf(double c) const {
  check_probability(c, "pdf");
  double sum = 0.0;
  for (const auto& wc : components_) sum += wc.weight * wc.component.pdf(c);
  return sum;
}

double MixtureDistribution::cdf(double c) const {
  check_probability(c, "cdf");
  double sum = 0.0;
  for (const auto& wc : components_) sum += wc.weight * wc.component.cdf(c);
  return std::min(sum, 1.0);
}

double MixtureDistribution::quantile(double q) const {
  check_probability(q, "quantile");
  double lo = 0.0;
  double hi = 1.0;
  if (cdf(0.0) >= q) return 0.0;
  // Invariant: cdf(lo) < q <= cdf(hi).
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) >= q) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double MixtureDistribution::mean() const {
  double sum = 0.0;
  for (const auto& wc : components_) sum += wc.weight * wc.component.mean();
  return sum;
}

double MixtureDistribution::integral_cdf(double a, double b) const {
  check_bounds(a, b, "integral_cdf");
  if (a == b) return 0.0;
  // Integration by parts: \int_a^b F = b F(b) - a F(a) - \int_a^b c f(c) dc.
  double sum = 0.0;
  for (const auto& wc : components_) {
    const auto& comp = wc.component;
    sum += wc.weight * (b * comp.cdf(b) - a * comp.cdf(a) - comp.partial_expectation(a, b));
  }
  return std::max(sum, 0.0);
}

double MixtureDistribution::partial_expectation(double a, double b) const {
  check_bounds(a, b, "partial_expectation");
  if (a == b) return 0.0;
  double sum = 0.0;
  for (const auto& wc : components_) sum += wc.weight * wc.component.partial_expectation(a, b);
  return std::max(sum, 0.0);
}

double MixtureDistribution::sample(Rng& rng) const {
  std::size_t index = 0;
  if (components_.size() > 1) {
    const double u = rng.uniform() * cumulative_weights_.back();
    index = static_cast<std::size_t>(
        std::upper_bound(cumulative_weights_.begin(), cumulative_weights_.end(), u) - cumulative_weights_.begin());
    index = std::min(index, components_.size() - 1);
  }
  return components_[index].component.sample(rng);
}

std::vector<double> MixtureDistribution::knots() const {
  std::vector<double> out;
  for (const auto& wc : components_) {
    if (const auto* u = std::get_if<Uniform>(&wc.component.law())) {
      for (double k : {u->lo, u->hi}) {
        if (k > 0.0 && k < 1.0) out.push_back(k);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string MixtureDistribution::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) os << " + ";
    const auto& wc = components_[i];
    if (components_.size() > 1) os << wc.weight << "*";
    if (const auto* u = std::get_if<Uniform>(&wc.component.law())) {
      os << "U[" << u->lo << "," << u->hi << "]";
    } else {
      const auto& b = std::get<BetaShape>(wc.component.law());
      os << "Beta(" << b.alpha << "," << b.beta << ")";
    }
  }
  return os.str();
}

double order_statistic_pdf(const MixtureDistribution& dist, int k, int w, double c) {
  if (w < 1 || k < 1 || k > w) throw std::domain_error("order_statistic_pdf: need 1 <= k <= w");
  check_probability(c, "order_statistic_pdf");
  const double f = dist.pdf(c);
  if (f == 0.0) return 0.0;
  const double big_f = dist.cdf(c);
  const double coef = k * std::exp(log_choose(w, k));
  return coef * f * std::pow(big_f, k - 1) * std::pow(1.0 - big_f, w - k);
}

// ---------------------------------------------------------------------------
// GroupModel

namespace {

MixtureDistribution pool(double r, const MixtureDistribution& a, const MixtureDistribution& b) {
  std::vector<WeightedComponent> parts;
  for (const auto& wc : a.components()) parts.push_back({r * wc.weight, wc.component});
  for (const auto& wc : b.components()) parts.push_back({(1.0 - r) * wc.weight, wc.component});
  return MixtureDistribution(std::move(parts));
}

double checked_share(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("group share r must lie in (0, 1)");
  return r;
}

}  // namespace

GroupModel::GroupModel(double r, MixtureDistribution dist_a, MixtureDistribution dist_b)
    : r_(checked_share(r)),
      dist_a_(std::move(dist_a)),
      dist_b_(std::move(dist_b)),
      pooled_(pool(r_, dist_a_, dist_b_)) {}

}  // namespace jury
