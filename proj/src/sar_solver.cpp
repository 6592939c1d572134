#include "jury/sar_solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace jury {

namespace {

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

void write_optional(std::ostream& os, double v) {
  if (!std::isnan(v)) os << v;
}

}  // namespace

EquilibriumTable::EquilibriumTable(int j, int d, int p) : j_(j), d_(d), p_(p) {
  if (j < 0 || d < 0 || p < 0) throw std::invalid_argument("EquilibriumTable: negative dimension");
  const auto n = static_cast<std::size_t>(j + 1) * (d + 1) * (p + 1);
  values_.assign(n, 0.0);
  t_p_.assign(n, kAbsent);
  t_d_.assign(n, kAbsent);
  raw_p_.assign(n, kAbsent);
  raw_d_.assign(n, kAbsent);
}

bool EquilibriumTable::contains(SubgameKey key) const {
  return key.kappa >= 0 && key.kappa <= j_ && key.delta >= 0 && key.delta <= d_ && key.pi >= 0 && key.pi <= p_;
}

void EquilibriumTable::check(SubgameKey key) const {
  if (!contains(key)) {
    throw std::out_of_range("subgame (" + std::to_string(key.kappa) + "," + std::to_string(key.delta) + "," +
                            std::to_string(key.pi) + ") outside table");
  }
}

double EquilibriumTable::value(SubgameKey key) const {
  check(key);
  return values_[index(key)];
}

Thresholds EquilibriumTable::thresholds(SubgameKey key) const {
  check(key);
  Thresholds t;
  const std::size_t i = index(key);
  if (!std::isnan(t_p_[i])) t.plaintiff = t_p_[i];
  if (!std::isnan(t_d_[i])) t.defendant = t_d_[i];
  return t;
}

double EquilibriumTable::raw_plaintiff_ratio(SubgameKey key) const {
  check(key);
  return raw_p_[index(key)];
}

double EquilibriumTable::raw_defendant_ratio(SubgameKey key) const {
  check(key);
  return raw_d_[index(key)];
}

void EquilibriumTable::write_csv(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << "kappa,delta,pi,value,t_p,t_d\n";
  for (int k = 0; k <= j_; ++k) {
    for (int d = 0; d <= d_; ++d) {
      for (int p = 0; p <= p_; ++p) {
        const std::size_t i = index({k, d, p});
        os << k << ',' << d << ',' << p << ',' << values_[i] << ',';
        write_optional(os, t_p_[i]);
        os << ',';
        write_optional(os, t_d_[i]);
        os << '\n';
      }
    }
  }
  os.precision(old_precision);
}

EquilibriumTable solve(const MixtureDistribution& dist, int j, int d, int p) {
  if (j < 1) throw std::invalid_argument("solve: jury size must be at least 1");
  if (d < 0 || p < 0) throw std::invalid_argument("solve: challenge counts must be nonnegative");

  EquilibriumTable table(j, d, p);
  const double mu = dist.mean();

  for (int k = 0; k <= j; ++k) {
    for (int dl = 0; dl <= d; ++dl) {
      for (int pl = 0; pl <= p; ++pl) {
        const std::size_t i = table.index({k, dl, pl});
        if (k == 0) {
          table.values_[i] = 1.0;
          continue;
        }
        const double seat = table.values_[table.index({k - 1, dl, pl})];
        if (dl == 0 && pl == 0) {
          table.values_[i] = seat * mu;
          continue;
        }

        double lo = 0.0;
        double hi = 1.0;
        double value = 0.0;
        if (pl > 0) {
          const double after_p = table.values_[table.index({k, dl, pl - 1})];
          const double ratio = after_p / seat;
          table.raw_p_[i] = ratio;
          lo = std::clamp(ratio, 0.0, 1.0);
          table.t_p_[i] = lo;
          value += dist.cdf(lo) * after_p;
        }
        if (dl > 0) {
          const double after_d = table.values_[table.index({k, dl - 1, pl})];
          const double ratio = after_d / seat;
          table.raw_d_[i] = ratio;
          hi = std::clamp(ratio, 0.0, 1.0);
          table.t_d_[i] = hi;
          value += (1.0 - dist.cdf(hi)) * after_d;
        }
        assert(lo <= hi);
        if (lo < hi) value += seat * dist.partial_expectation(lo, hi);
        if (!(value > 1e-300)) throw std::underflow_error("solve: subgame value underflowed");
        table.values_[i] = value;
      }
    }
  }
  return table;
}

}  // namespace jury
