#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "jury/distributions.hpp"
#include "jury/rng.hpp"
#include "jury/sar_solver.hpp"

namespace jury {

struct Juror {
  double c;
  Group group;

  friend bool operator==(const Juror&, const Juror&) = default;
};

/// Potential jurors in presentation order.
using Panel = std::vector<Juror>;

struct JuryOutcome {
  std::vector<Juror> selected;
  int challenges_d = 0;
  int challenges_p = 0;
  /// Panel positions examined (S&R); the full panel for STR and RAN.
  int presented_count = 0;
};

enum class Procedure { struck, strike_replace, random };

/// "STR", "SAR", "RAN".
std::string_view procedure_name(Procedure proc);
/// Accepts the short names above (and "S&R"); throws std::invalid_argument.
Procedure parse_procedure(std::string_view name);

/// n independent draws: group a with probability r, then c from that group's law.
Panel draw_panel(const GroupModel& model, int n, Rng& rng);

/// Struck: the plaintiff strikes the p lowest, the defendant the d highest.
/// Selected jurors are ranks p+1..p+j by ascending c, ties broken by panel index.
JuryOutcome run_struck(std::span<const Juror> panel, int j, int d, int p);

/// Strike-and-Replace with equilibrium threshold strategies. In state
/// (kappa, delta, pi) the presented juror is challenged by the plaintiff when
/// pi > 0 and c < t_P, otherwise by the defendant when delta > 0 and c > t_D,
/// otherwise seated.
JuryOutcome run_strike_replace(std::span<const Juror> panel, const EquilibriumTable& table);

/// Uniformly random j-subset of the panel, no challenges.
JuryOutcome run_random(std::span<const Juror> panel, int j, Rng& rng);

}  // namespace jury
