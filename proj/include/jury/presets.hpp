#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jury/simulation.hpp"

namespace jury {

/// Named polarization levels: group a is the low-c group unless swapped.
enum class Polarization { extreme, moderate, mild };

std::string_view polarization_name(Polarization level);
/// The symmetric beta pair for a level, e.g. Beta(1,5) / Beta(5,1).
GroupModel beta_pair_model(double r, Polarization level, bool swap_groups = false);

struct Scenario {
  std::string label;
  SimulationRequest request;
  /// Percentile behind each request threshold, when it was given as one.
  std::vector<std::optional<double>> threshold_percentiles;
  /// Upper tail thresholds for max_above.
  std::vector<double> high_thresholds;
};

/// A printed number to compare against the matching output row.
struct PublishedValue {
  std::string scenario;
  Procedure procedure;
  std::string statistic;
  int x = -1;               // -1 when the statistic has no count
  int threshold_index = -1; // -1 when the statistic has no threshold
  double value;
};

struct Preset {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<Scenario> scenarios;
  std::vector<int> tail_counts;  // x values for at_least_below
  bool minority = false;
  bool group_share = false;
  bool median_counts = false;
  bool extremes = false;
  std::vector<PublishedValue> published;
};

struct PresetOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_sims;
};

std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name. Scenario i is seeded
/// with seed + i.
Preset build_preset(std::string_view name, const PresetOptions& options = {});

struct OutputFile {
  std::string name;
  std::string contents;
};

struct PresetOutput {
  std::vector<OutputFile> files;
  std::string report;
};

struct ExperimentConfig;

/// A one-scenario preset named "simulate" for an ad hoc config: tail counts
/// x = 1..j, minority and median statistics, extremes when upper thresholds
/// are given.
Preset preset_from_config(const ExperimentConfig& config);

/// Simulates every scenario and renders the CSV bundle:
///   <name>_data.csv     one row per estimate
///   <name>_checks.csv   printed values next to the computed ones
///   <name>_oracle.csv   exact values next to the simulated ones (j = d = p = 1 presets)
///   <name>_analytic.csv closed forms at the pooled median (median presets)
PresetOutput run_preset(const Preset& preset, int workers);

/// Software version stamped into every output row.
std::string_view version_string();

}  // namespace jury
