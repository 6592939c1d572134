#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jury/distributions.hpp"
#include "jury/procedures.hpp"

namespace jury {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED0001;

/// Schema violation; path() names the offending field, e.g. "group_model.a.mixture[1].w".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A tail threshold given either as a conviction probability or as a
/// percentile of the pooled law ("p10" in JSON).
struct ThresholdSpec {
  bool percentile = false;
  double value = 0.0;  // probability, or percentile in [0, 100]
};

struct ExperimentConfig {
  std::vector<Procedure> procedures;
  int j = 0;
  int d = 0;
  int p = 0;
  GroupModel model;
  std::size_t n_sims = 0;
  std::uint64_t seed = kDefaultSeed;
  std::vector<ThresholdSpec> thresholds;
  std::vector<ThresholdSpec> high_thresholds;
  int workers = 1;
  std::string output;
};

/// Distribution literal:
///   {"uniform":[lo,hi]} | {"beta":[a,b]} |
///   {"mixture":[{"w":0.25,"beta":[1,5]},{"w":0.75,"uniform":[0.5,1]}]}
MixtureDistribution parse_distribution(std::string_view json_text);

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Resolve to probabilities (percentiles through the pooled quantile),
/// sorted ascending with duplicates removed.
std::vector<double> resolve_thresholds(const std::vector<ThresholdSpec>& specs, const MixtureDistribution& pooled);

}  // namespace jury
