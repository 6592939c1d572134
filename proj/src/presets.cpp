#include "jury/presets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jury/config.hpp"
#include "jury/csv.hpp"
#include "jury/metrics.hpp"
#include "jury/oracle.hpp"

#ifndef JURY_VERSION
#define JURY_VERSION "unknown"
#endif

namespace jury {

namespace {

constexpr std::size_t kDefaultSims = 50000;

const std::array<Polarization, 3> kLevels{Polarization::extreme, Polarization::moderate, Polarization::mild};

std::vector<ThresholdSpec> percentile_specs(int from, int to) {
  std::vector<ThresholdSpec> out;
  for (int q = from; q <= to; ++q) out.push_back({true, static_cast<double>(q)});
  return out;
}

Preset named(std::string name, std::uint64_t seed, std::vector<int> tail_counts) {
  Preset preset;
  preset.name = std::move(name);
  preset.seed = seed;
  preset.tail_counts = std::move(tail_counts);
  return preset;
}

Scenario make_scenario(std::string label, GroupModel model, int j, int d, int p, const std::vector<ThresholdSpec>& specs,
                       std::vector<double> high = {}) {
  // Keep the percentile next to each resolved threshold; specs are given in ascending order.
  std::vector<double> thresholds;
  std::vector<std::optional<double>> percentiles;
  for (const auto& spec : specs) {
    thresholds.push_back(spec.percentile ? model.pooled().quantile(spec.value / 100.0) : spec.value);
    percentiles.push_back(spec.percentile ? std::optional<double>(spec.value) : std::nullopt);
  }
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) throw std::logic_error("preset thresholds must ascend");
  SimulationRequest request{.model = std::move(model),
                            .j = j,
                            .d = d,
                            .p = p,
                            .procedures = {Procedure::struck, Procedure::strike_replace, Procedure::random},
                            .n_sims = kDefaultSims,
                            .seed = kDefaultSeed,
                            .thresholds = std::move(thresholds)};
  return {std::move(label), std::move(request), std::move(percentiles), std::move(high)};
}

struct TableColumn {
  double sar, str;
};

// Printed minority tables: rows are levels, then the RAN column.
struct MinorityTable {
  std::array<TableColumn, 3> mean;
  double ran_mean;
  std::array<TableColumn, 3> sd;
  double ran_sd;
  std::array<TableColumn, 3> at_least_one;
  double ran_at_least_one;
};

void add_table(Preset& preset, const MinorityTable& t, bool with_at_least_one, const std::string& mean_stat,
               const std::string& sd_stat) {
  for (std::size_t i = 0; i < kLevels.size(); ++i) {
    const std::string label(polarization_name(kLevels[i]));
    auto add = [&](Procedure proc, const std::string& stat, int x, double v) {
      preset.published.push_back({label, proc, stat, x, -1, v});
    };
    add(Procedure::strike_replace, mean_stat, -1, t.mean[i].sar);
    add(Procedure::struck, mean_stat, -1, t.mean[i].str);
    add(Procedure::random, mean_stat, -1, t.ran_mean);
    add(Procedure::strike_replace, sd_stat, -1, t.sd[i].sar);
    add(Procedure::struck, sd_stat, -1, t.sd[i].str);
    add(Procedure::random, sd_stat, -1, t.ran_sd);
    if (with_at_least_one) {
      add(Procedure::strike_replace, "minority_at_least", 1, t.at_least_one[i].sar);
      add(Procedure::struck, "minority_at_least", 1, t.at_least_one[i].str);
      add(Procedure::random, "minority_at_least", 1, t.ran_at_least_one);
    }
  }
}

Preset minority_preset(std::string name, double r, bool swap, const MinorityTable& table) {
  Preset preset = named(std::move(name), 0, {});
  for (Polarization level : kLevels) {
    preset.scenarios.push_back(
        make_scenario(std::string(polarization_name(level)), beta_pair_model(r, level, swap), 12, 6, 6, {}));
  }
  preset.minority = true;
  add_table(preset, table, true, "minority_mean_fraction", "minority_std_fraction");
  return preset;
}

Preset balanced_preset(std::string name, double r, bool asymmetric, const MinorityTable& table) {
  Preset preset = named(std::move(name), 0, {});
  const std::array<std::pair<double, double>, 3> b_shapes{{{5, 2}, {4, 3}, {4, 4}}};
  for (std::size_t i = 0; i < kLevels.size(); ++i) {
    GroupModel model = beta_pair_model(r, kLevels[i]);
    if (asymmetric) {
      model = GroupModel(r, model.dist_a(), MixtureDistribution::beta(b_shapes[i].first, b_shapes[i].second));
    }
    preset.scenarios.push_back(make_scenario(std::string(polarization_name(kLevels[i])), std::move(model), 12, 6, 6, {}));
  }
  preset.group_share = true;
  add_table(preset, table, false, "group_a_mean_fraction", "group_a_std_fraction");
  return preset;
}

Preset median_preset(std::string name, std::vector<Polarization> levels) {
  Preset preset = named(std::move(name), 0, {});
  for (Polarization level : levels) {
    for (double r : {0.1, 0.25, 0.5}) {
      std::ostringstream label;
      label << polarization_name(level) << "_r" << r;
      preset.scenarios.push_back(make_scenario(label.str(), beta_pair_model(r, level), 12, 6, 6, {}));
    }
  }
  preset.median_counts = true;
  return preset;
}

Preset make_fig3() {
  Preset preset = named("fig3", 0x5EED0301, {1});
  for (Polarization level : kLevels) {
    preset.scenarios.push_back(
        make_scenario(std::string(polarization_name(level)), beta_pair_model(0.25, level), 12, 6, 6, percentile_specs(1, 30)));
  }
  const double sar_at_p10[] = {0.29, 0.28, 0.27};
  const double p10[] = {0.10, 0.25, 0.28};
  for (std::size_t i = 0; i < kLevels.size(); ++i) {
    const std::string label(polarization_name(kLevels[i]));
    preset.published.push_back({label, Procedure::strike_replace, "at_least_below", 1, 9, sar_at_p10[i]});
    preset.published.push_back({label, Procedure::random, "threshold", -1, 9, p10[i]});
  }
  return preset;
}

Preset make_fig4() {
  Preset preset = named("fig4", 0x5EED0401, {1});
  GroupModel model(0.75, MixtureDistribution::uniform(0.0, 0.1), MixtureDistribution::uniform(0.9, 1.0));
  std::vector<ThresholdSpec> specs;
  for (int k = 1; k <= 20; ++k) specs.push_back({false, 0.005 * k});
  preset.scenarios.push_back(make_scenario("skewed", std::move(model), 1, 1, 1, specs));
  return preset;
}

Preset make_fig5() {
  Preset preset = named("fig5", 0x5EED0501, {1});
  std::vector<ThresholdSpec> specs;
  for (int k = 1; k <= 19; ++k) specs.push_back({false, 0.05 * k});
  for (int k = 1; k <= 20; ++k) {
    const double r = (k - 0.5) / 20.0;
    std::ostringstream label;
    label << "r" << r;
    GroupModel model(r, MixtureDistribution::uniform(0.0, r), MixtureDistribution::uniform(r, 1.0));
    preset.scenarios.push_back(make_scenario(label.str(), std::move(model), 1, 1, 1, specs));
  }
  preset.minority = true;
  return preset;
}

Preset make_fig6() {
  Preset preset = named("fig6", 0x5EED0601, {1});
  for (int k = 1; k <= 18; ++k) {
    preset.scenarios.push_back(make_scenario("dp" + std::to_string(k), beta_pair_model(0.2, Polarization::moderate), 12,
                                             k, k, percentile_specs(10, 10)));
  }
  preset.minority = true;
  preset.published.push_back({"dp6", Procedure::random, "threshold", -1, 0, 0.27});
  return preset;
}

Preset make_figB1() {
  Preset preset = named("figB1", 0x5EEDB101, {1});
  GroupModel model(0.5, MixtureDistribution::uniform(0.0, 1.0), MixtureDistribution::uniform(0.0, 1.0));
  preset.scenarios.push_back(make_scenario("uniform", std::move(model), 12, 6, 6, percentile_specs(1, 30)));
  return preset;
}

Preset make_sec3() {
  Preset preset = named("sec3-example", 0x5EED0031, {1});
  GroupModel model = sec3_model();
  const double q95 = model.pooled().quantile(0.95);
  preset.scenarios.push_back(make_scenario("example", std::move(model), 1, 1, 1, percentile_specs(5, 5), {0.94, q95}));
  for (auto& s : preset.scenarios) s.request.n_sims = 200000;
  preset.minority = true;
  preset.extremes = true;
  preset.published = {
      {"example", Procedure::struck, "minority_mean_fraction", -1, -1, 0.03},
      {"example", Procedure::strike_replace, "minority_mean_fraction", -1, -1, 0.066},
      {"example", Procedure::random, "minority_mean_fraction", -1, -1, 0.10},
      {"example", Procedure::struck, "at_least_below", 1, 0, 0.015},
      {"example", Procedure::strike_replace, "at_least_below", 1, 0, 0.033},
      {"example", Procedure::struck, "max_above", -1, 0, 0.076},
      {"example", Procedure::strike_replace, "max_above", -1, 0, 0.083},
  };
  return preset;
}

struct Row {
  std::string scenario;
  Procedure procedure;
  std::string statistic;
  std::optional<double> threshold;
  std::optional<double> percentile;
  int x = -1;
  int threshold_index = -1;
  double estimate;
  std::optional<double> std_error;
  std::size_t n_sims;
  std::uint64_t seed;
};

void summarize(const Preset& preset, const Scenario& scenario, const ProcedureSummary& entry, std::vector<Row>& rows) {
  const SimulationSummary& s = entry.summary;
  const auto& req = scenario.request;
  auto add = [&](std::string stat, std::optional<double> threshold, std::optional<double> pct, int x, int ti,
                 Estimate e, bool has_se = true) {
    rows.push_back({scenario.label, entry.procedure, std::move(stat), threshold, pct, x, ti, e.value,
                    has_se ? std::optional<double>(e.std_error) : std::nullopt, req.n_sims, req.seed});
  };

  for (std::size_t ti = 0; ti < req.thresholds.size(); ++ti) {
    const double t = req.thresholds[ti];
    const auto pct = scenario.threshold_percentiles[ti];
    const int idx = static_cast<int>(ti);
    for (int x : preset.tail_counts) add("at_least_below", t, pct, x, idx, s.prob_at_least(x, ti));
    add("expected_below", t, pct, -1, idx, s.expected_below(ti));
    if (preset.extremes) add("min_below", t, pct, -1, idx, s.minmax_extreme_stats(t, 1.0).min_below);
  }
  if (preset.extremes) {
    for (std::size_t hi = 0; hi < scenario.high_thresholds.size(); ++hi) {
      const double t = scenario.high_thresholds[hi];
      add("max_above", t, std::nullopt, -1, static_cast<int>(hi), s.minmax_extreme_stats(0.0, t).max_above);
    }
  }
  if (preset.minority) {
    const MinorityStats m = s.minority_stats();
    add("minority_mean_fraction", std::nullopt, std::nullopt, -1, -1, m.mean_fraction);
    add("minority_std_fraction", std::nullopt, std::nullopt, -1, -1, {m.std_fraction, 0.0}, false);
    for (int x = 1; x <= req.j; ++x) add("minority_at_least", std::nullopt, std::nullopt, x, -1, s.minority_at_least(x));
  }
  if (preset.group_share) {
    const GroupShareStats g = s.balanced_group_stats();
    add("group_a_mean_fraction", std::nullopt, std::nullopt, -1, -1, g.mean_fraction_a);
    add("group_a_std_fraction", std::nullopt, std::nullopt, -1, -1, {g.std_fraction_a, 0.0}, false);
  }
  if (preset.median_counts) {
    const auto counts = s.median_count_stats();
    for (std::size_t x = 0; x < counts.size(); ++x) {
      add("below_median_at_least", s.median(), std::nullopt, static_cast<int>(x), -1, counts[x]);
    }
  }
}

std::string describe_row(Procedure proc, const std::string& stat, int x, std::optional<double> threshold) {
  std::string q = std::string(procedure_name(proc)) + " " + stat;
  if (x >= 0) q += " x=" + std::to_string(x);
  if (threshold) q += " c=" + format_number(*threshold);
  return q;
}

const Row* find_row(const std::vector<Row>& rows, const PublishedValue& v) {
  for (const auto& row : rows) {
    if (row.scenario == v.scenario && row.procedure == v.procedure && row.statistic == v.statistic && row.x == v.x &&
        row.threshold_index == v.threshold_index) {
      return &row;
    }
  }
  return nullptr;
}

// Upper end of group a's support when it lies entirely below group b's.
std::optional<double> ordered_edge(const GroupModel& model) {
  const double edge = model.dist_a().quantile(1.0);
  if (model.dist_b().cdf(edge) > 1e-12) return std::nullopt;
  return edge;
}

bool all_uniform(const MixtureDistribution& dist) {
  return std::all_of(dist.components().begin(), dist.components().end(),
                     [](const WeightedComponent& wc) { return wc.component.is_uniform(); });
}

void oracle_rows(const Preset& preset, const Scenario& scenario, const std::vector<Row>& rows, CsvTable& out) {
  const auto& req = scenario.request;
  const GroupModel& model = req.model;
  const MixtureDistribution& pooled = model.pooled();
  const ExactOutcome tree = exact_game_tree_111(model, solve(pooled, 1, 1, 1));

  auto emit = [&](Procedure proc, const std::string& stat, int x, int ti, double exact) {
    for (const auto& row : rows) {
      if (row.scenario != scenario.label || row.procedure != proc || row.statistic != stat || row.x != x ||
          row.threshold_index != ti) {
        continue;
      }
      const double se = row.std_error.value_or(0.0);
      const double z = se > 0.0 ? (row.estimate - exact) / se : 0.0;
      out.add_row({preset.name, scenario.label, std::string(procedure_name(proc)), stat, format_optional(row.threshold),
                   format_number(exact), format_number(row.estimate), format_number(se), format_number(z)});
    }
  };

  for (std::size_t ti = 0; ti < req.thresholds.size(); ++ti) {
    const double t = req.thresholds[ti];
    const int idx = static_cast<int>(ti);
    emit(Procedure::struck, "at_least_below", 1, idx, exact_str_order_stat(pooled, 1, 1, 1, t, 1));
    emit(Procedure::strike_replace, "at_least_below", 1, idx, tree.prob_selected_at_most(t));
    emit(Procedure::random, "at_least_below", 1, idx, pooled.cdf(t));
  }
  for (std::size_t hi = 0; hi < scenario.high_thresholds.size(); ++hi) {
    const double t = scenario.high_thresholds[hi];
    const int idx = static_cast<int>(hi);
    emit(Procedure::struck, "max_above", -1, idx, 1.0 - exact_str_order_stat(pooled, 1, 1, 1, t, 1));
    emit(Procedure::strike_replace, "max_above", -1, idx, tree.prob_selected_at_least(t));
    emit(Procedure::random, "max_above", -1, idx, 1.0 - pooled.cdf(t));
  }
  if (preset.minority) {
    if (const auto edge = ordered_edge(model)) {
      emit(Procedure::struck, "minority_mean_fraction", -1, -1, exact_str_order_stat(pooled, 1, 1, 1, *edge, 1));
    }
    emit(Procedure::strike_replace, "minority_mean_fraction", -1, -1, tree.prob_minority());
    emit(Procedure::random, "minority_mean_fraction", -1, -1, model.r());
  }
}

}  // namespace

std::string_view version_string() { return JURY_VERSION; }

std::string_view polarization_name(Polarization level) {
  switch (level) {
    case Polarization::extreme:
      return "extreme";
    case Polarization::moderate:
      return "moderate";
    case Polarization::mild:
      return "mild";
  }
  return "?";
}

GroupModel beta_pair_model(double r, Polarization level, bool swap_groups) {
  std::pair<double, double> low{1, 5}, high{5, 1};
  if (level == Polarization::moderate) low = {2, 4}, high = {4, 2};
  if (level == Polarization::mild) low = {3, 4}, high = {4, 3};
  if (swap_groups) std::swap(low, high);
  return GroupModel(r, MixtureDistribution::beta(low.first, low.second), MixtureDistribution::beta(high.first, high.second));
}

std::vector<std::string> preset_names() {
  return {"fig3", "fig4", "fig5", "fig6", "fig7", "tab2a", "tab2b", "tab3a", "tab3b", "tab3c", "figB1", "tabB1", "figB2",
          "sec3-example"};
}

Preset build_preset(std::string_view name, const PresetOptions& options) {
  Preset preset;
  if (name == "fig3") {
    preset = make_fig3();
  } else if (name == "fig4") {
    preset = make_fig4();
  } else if (name == "fig5") {
    preset = make_fig5();
  } else if (name == "fig6") {
    preset = make_fig6();
  } else if (name == "fig7") {
    preset = median_preset("fig7", {Polarization::extreme});
    preset.seed = 0x5EED0701;
  } else if (name == "figB2") {
    preset = median_preset("figB2", {Polarization::moderate, Polarization::mild});
    preset.seed = 0x5EEDB201;
  } else if (name == "figB1") {
    preset = make_figB1();
  } else if (name == "tab2a") {
    preset = minority_preset("tab2a", 0.25, false,
                             {{{{.10, .08}, {.18, .16}, {.23, .23}}}, .25,
                              {{{.11, .11}, {.12, .12}, {.12, .12}}}, .12,
                              {{{.57, .45}, {.88, .84}, {.96, .95}}}, .97});
    preset.seed = 0x5EED2A01;
  } else if (name == "tab2b") {
    preset = minority_preset("tab2b", 0.10, false,
                             {{{{.02, .00}, {.05, .04}, {.09, .08}}}, .10,
                              {{{.04, .01}, {.07, .06}, {.08, .08}}}, .09,
                              {{{.17, .02}, {.47, .38}, {.67, .64}}}, .72});
    preset.seed = 0x5EED2B01;
  } else if (name == "tabB1") {
    // Minority group drawn from the high-c member of each pair; both printed panels.
    Preset a = minority_preset("tabB1", 0.25, true,
                               {{{{.12, .08}, {.18, .16}, {.23, .23}}}, .25,
                                {{{.11, .11}, {.12, .12}, {.12, .12}}}, .12,
                                {{{.76, .45}, {.89, .85}, {.96, .95}}}, .97});
    Preset b = minority_preset("tabB1", 0.10, true,
                               {{{{.01, .00}, {.05, .04}, {.09, .08}}}, .10,
                                {{{.03, .02}, {.06, .06}, {.08, .08}}}, .09,
                                {{{.09, .02}, {.44, .38}, {.66, .64}}}, .72});
    auto relabel = [](Preset& p, const std::string& suffix) {
      for (auto& s : p.scenarios) s.label += suffix;
      for (auto& v : p.published) v.scenario += suffix;
    };
    relabel(a, "_r0.25");
    relabel(b, "_r0.1");
    preset = std::move(a);
    for (auto& s : b.scenarios) preset.scenarios.push_back(std::move(s));
    for (auto& v : b.published) preset.published.push_back(std::move(v));
    preset.seed = 0x5EEDB1B1;
  } else if (name == "tab3a") {
    preset = balanced_preset("tab3a", 0.5, false,
                             {{{{.48, .50}, {.49, .50}, {.50, .50}}}, .50, {{{.18, .20}, {.16, .17}, {.15, .15}}}, .14, {}, 0});
    preset.seed = 0x5EED3A01;
  } else if (name == "tab3b") {
    preset = balanced_preset("tab3b", 0.45, false,
                             {{{{.39, .40}, {.42, .42}, {.45, .44}}}, .45, {{{.18, .20}, {.16, .17}, {.15, .15}}}, .14, {}, 0});
    preset.seed = 0x5EED3B01;
  } else if (name == "tab3c") {
    preset = balanced_preset("tab3c", 0.5, true,
                             {{{{.47, .50}, {.49, .48}, {.49, .48}}}, .50, {{{.18, .20}, {.15, .16}, {.15, .16}}}, .14, {}, 0});
    preset.seed = 0x5EED3C01;
  } else if (name == "sec3-example") {
    preset = make_sec3();
  } else {
    throw std::invalid_argument("unknown preset: " + std::string(name));
  }

  if (options.seed) preset.seed = *options.seed;
  for (std::size_t i = 0; i < preset.scenarios.size(); ++i) {
    auto& req = preset.scenarios[i].request;
    req.seed = preset.seed + i;
    if (options.n_sims) {
      req.n_sims = *options.n_sims;
    } else if (preset.name != "sec3-example") {
      req.n_sims = kDefaultSims;
    }
  }
  return preset;
}

Preset preset_from_config(const ExperimentConfig& config) {
  std::vector<ThresholdSpec> specs = config.thresholds;
  const auto& pooled = config.model.pooled();
  auto resolved = [&](const ThresholdSpec& s) { return s.percentile ? pooled.quantile(s.value / 100.0) : s.value; };
  std::stable_sort(specs.begin(), specs.end(),
                   [&](const ThresholdSpec& a, const ThresholdSpec& b) { return resolved(a) < resolved(b); });
  specs.erase(std::unique(specs.begin(), specs.end(),
                          [&](const ThresholdSpec& a, const ThresholdSpec& b) { return resolved(a) == resolved(b); }),
              specs.end());

  std::vector<int> counts;
  for (int x = 1; x <= config.j; ++x) counts.push_back(x);
  Preset preset = named("simulate", config.seed, std::move(counts));
  Scenario scenario = make_scenario("config", config.model, config.j, config.d, config.p, specs,
                                    resolve_thresholds(config.high_thresholds, pooled));
  scenario.request.procedures = config.procedures;
  scenario.request.n_sims = config.n_sims;
  scenario.request.seed = config.seed;
  preset.scenarios.push_back(std::move(scenario));
  preset.minority = true;
  preset.median_counts = true;
  preset.extremes = !config.high_thresholds.empty();
  return preset;
}

PresetOutput run_preset(const Preset& preset, int workers) {
  std::vector<Row> rows;
  for (const auto& scenario : preset.scenarios) {
    const SimulationResult result = simulate_parallel(scenario.request, workers);
    for (const auto& entry : result.per_procedure) summarize(preset, scenario, entry, rows);
  }

  const std::string version(version_string());
  CsvTable data({"preset", "scenario", "procedure", "statistic", "threshold", "percentile", "x", "estimate", "std_error",
                 "n_sims", "seed", "version"});
  for (const auto& row : rows) {
    data.add_row({preset.name, row.scenario, std::string(procedure_name(row.procedure)), row.statistic,
                  format_optional(row.threshold), format_optional(row.percentile), row.x >= 0 ? std::to_string(row.x) : "",
                  format_number(row.estimate), format_optional(row.std_error), std::to_string(row.n_sims),
                  std::to_string(row.seed), version});
  }

  PresetOutput out;
  out.files.push_back({preset.name + "_data.csv", data.to_string()});
  std::ostringstream report;
  report << preset.name << ": " << preset.scenarios.size() << " scenario(s), " << rows.size() << " estimates\n";

  CsvTable checks({"preset", "scenario", "quantity", "paper_value", "computed_value", "abs_diff"});
  auto add_check = [&](const std::string& scenario, const std::string& quantity, std::optional<double> paper,
                       double computed) {
    const std::string diff = paper ? format_number(std::fabs(*paper - computed)) : "";
    checks.add_row({preset.name, scenario, quantity, format_optional(paper), format_number(computed), diff});
    report << "  " << scenario << "  " << quantity << "  paper=" << (paper ? format_number(*paper) : "-")
           << "  computed=" << format_number(computed) << '\n';
  };
  if (preset.name == "sec3-example") {
    for (const auto& r : sec3_report()) add_check("exact", r.quantity, r.paper_value, r.computed_value);
  }
  for (const auto& v : preset.published) {
    if (v.statistic == "threshold") {
      for (const auto& s : preset.scenarios) {
        if (s.label == v.scenario) {
          add_check(v.scenario, "threshold index " + std::to_string(v.threshold_index), v.value,
                    s.request.thresholds.at(static_cast<std::size_t>(v.threshold_index)));
        }
      }
      continue;
    }
    const Row* row = find_row(rows, v);
    if (!row) throw std::logic_error("published value without a matching estimate: " + v.statistic);
    add_check(v.scenario, describe_row(v.procedure, v.statistic, v.x, row->threshold), v.value, row->estimate);
  }
  if (checks.rows() > 0) out.files.push_back({preset.name + "_checks.csv", checks.to_string()});

  const bool exact_tree = std::all_of(preset.scenarios.begin(), preset.scenarios.end(), [](const Scenario& s) {
    const auto& m = s.request.model;
    return s.request.j == 1 && s.request.d == 1 && s.request.p == 1 && all_uniform(m.dist_a()) && all_uniform(m.dist_b());
  });
  if (exact_tree) {
    CsvTable oracle({"preset", "scenario", "procedure", "statistic", "threshold", "oracle_value", "estimate", "std_error",
                     "z"});
    for (const auto& s : preset.scenarios) oracle_rows(preset, s, rows, oracle);
    out.files.push_back({preset.name + "_oracle.csv", oracle.to_string()});
  }

  if (preset.median_counts) {
    // Struck and random at the median do not depend on the distribution.
    const auto& req = preset.scenarios.front().request;
    CsvTable analytic({"preset", "x", "t_ran", "t_str", "str_minus_ran"});
    for (int x = 0; x <= req.j; ++x) {
      const double ran = analytic_T_ran(req.j, 0.5, x);
      const double str = analytic_T_str(req.j, req.d, req.p, 0.5, x);
      analytic.add_row({preset.name, std::to_string(x), format_number(ran), format_number(str), format_number(str - ran)});
    }
    out.files.push_back({preset.name + "_analytic.csv", analytic.to_string()});
  }
  out.report = report.str();
  return out;
}

}  // namespace jury
