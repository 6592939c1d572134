#include "jury/procedures.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jury {

std::string_view procedure_name(Procedure proc) {
  switch (proc) {
    case Procedure::struck:
      return "STR";
    case Procedure::strike_replace:
      return "SAR";
    case Procedure::random:
      return "RAN";
  }
  return "?";
}

Procedure parse_procedure(std::string_view name) {
  if (name == "STR") return Procedure::struck;
  if (name == "SAR" || name == "S&R") return Procedure::strike_replace;
  if (name == "RAN") return Procedure::random;
  throw std::invalid_argument("unknown procedure '" + std::string(name) + "'");
}

Panel draw_panel(const GroupModel& model, int n, Rng& rng) {
  Panel panel;
  panel.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Group g = rng.uniform() < model.r() ? Group::a : Group::b;
    panel.push_back({model.dist(g).sample(rng), g});
  }
  return panel;
}

JuryOutcome run_struck(std::span<const Juror> panel, int j, int d, int p) {
  if (j < 1 || d < 0 || p < 0) throw std::invalid_argument("run_struck: invalid sizes");
  if (panel.size() != static_cast<std::size_t>(j + d + p)) {
    throw std::invalid_argument("run_struck: panel size must equal j + d + p");
  }
  std::vector<std::size_t> order(panel.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return panel[x].c < panel[y].c; });

  JuryOutcome out;
  out.selected.reserve(static_cast<std::size_t>(j));
  for (int r = p; r < p + j; ++r) out.selected.push_back(panel[order[static_cast<std::size_t>(r)]]);
  out.challenges_d = d;
  out.challenges_p = p;
  out.presented_count = static_cast<int>(panel.size());
  return out;
}

JuryOutcome run_strike_replace(std::span<const Juror> panel, const EquilibriumTable& table) {
  const int j = table.jury_size();
  const int d = table.defendant_challenges();
  const int p = table.plaintiff_challenges();
  if (panel.size() != static_cast<std::size_t>(j + d + p)) {
    throw std::invalid_argument("run_strike_replace: panel size must equal j + d + p");
  }

  JuryOutcome out;
  out.selected.reserve(static_cast<std::size_t>(j));
  SubgameKey state{j, d, p};
  std::size_t next = 0;
  while (state.kappa > 0) {
    // kappa + delta + pi panel members always remain.
    if (next >= panel.size()) throw std::logic_error("run_strike_replace: panel exhausted");
    const Juror& juror = panel[next++];
    if (state.pi > 0 && juror.c < table.plaintiff_threshold_unchecked(state)) {
      --state.pi;
      ++out.challenges_p;
    } else if (state.delta > 0 && juror.c > table.defendant_threshold_unchecked(state)) {
      --state.delta;
      ++out.challenges_d;
    } else {
      out.selected.push_back(juror);
      --state.kappa;
    }
  }
  out.presented_count = static_cast<int>(next);
  return out;
}

JuryOutcome run_random(std::span<const Juror> panel, int j, Rng& rng) {
  if (j < 0 || static_cast<std::size_t>(j) > panel.size()) {
    throw std::invalid_argument("run_random: need 0 <= j <= panel size");
  }
  std::vector<std::size_t> idx(panel.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: the first j slots form a uniform j-subset.
  for (std::size_t i = 0; i < static_cast<std::size_t>(j); ++i) {
    const std::size_t pick = i + static_cast<std::size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[pick]);
  }
  JuryOutcome out;
  out.selected.reserve(static_cast<std::size_t>(j));
  for (std::size_t i = 0; i < static_cast<std::size_t>(j); ++i) out.selected.push_back(panel[idx[i]]);
  out.presented_count = static_cast<int>(panel.size());
  return out;
}

}  // namespace jury
