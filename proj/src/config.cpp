#include "jury/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace jury {

namespace {

using nlohmann::json;

double number_at(const json& node, const std::string& path) {
  if (!node.is_number()) throw ConfigError(path, "expected a number");
  return node.get<double>();
}

std::pair<double, double> pair_at(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 2) throw ConfigError(path, "expected a two-element array");
  return {number_at(node[0], path + "[0]"), number_at(node[1], path + "[1]")};
}

Component component_at(const json& node, const std::string& path) {
  try {
    if (node.contains("uniform")) {
      const auto [lo, hi] = pair_at(node.at("uniform"), path + ".uniform");
      return Component(Uniform{lo, hi});
    }
    if (node.contains("beta")) {
      const auto [a, b] = pair_at(node.at("beta"), path + ".beta");
      return Component(BetaShape{a, b});
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path, "expected \"uniform\" or \"beta\"");
}

MixtureDistribution distribution_at(const json& node, const std::string& path) {
  if (!node.is_object()) throw ConfigError(path, "expected a distribution object");
  if (!node.contains("mixture")) return MixtureDistribution({{1.0, component_at(node, path)}});

  const json& parts = node.at("mixture");
  if (!parts.is_array() || parts.empty()) throw ConfigError(path + ".mixture", "expected a non-empty array");
  std::vector<WeightedComponent> components;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string item = path + ".mixture[" + std::to_string(i) + "]";
    if (!parts[i].is_object() || !parts[i].contains("w")) throw ConfigError(item + ".w", "missing weight");
    components.push_back({number_at(parts[i].at("w"), item + ".w"), component_at(parts[i], item)});
  }
  try {
    return MixtureDistribution(std::move(components));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ".mixture", e.what());
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
}

int int_at(const json& root, const std::string& key, int minimum) {
  if (!root.contains(key)) throw ConfigError(key, "required field missing");
  const json& node = root.at(key);
  if (!node.is_number_integer()) throw ConfigError(key, "expected an integer");
  const auto v = node.get<long long>();
  if (v < minimum) throw ConfigError(key, "must be at least " + std::to_string(minimum));
  return static_cast<int>(v);
}

std::uint64_t seed_at(const json& node) {
  if (node.is_number_unsigned() || node.is_number_integer()) {
    if (node.is_number_integer() && node.get<long long>() < 0) throw ConfigError("seed", "must be nonnegative");
    return node.get<std::uint64_t>();
  }
  if (node.is_string()) {
    try {
      std::size_t used = 0;
      const auto s = node.get<std::string>();
      const auto v = std::stoull(s, &used, 0);
      if (used != s.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("seed", "expected an integer or integer string");
    }
  }
  throw ConfigError("seed", "expected an integer");
}

std::vector<ThresholdSpec> thresholds_at(const json& root, const std::string& key) {
  std::vector<ThresholdSpec> out;
  if (!root.contains(key)) return out;
  const json& list = root.at(key);
  if (!list.is_array()) throw ConfigError(key, "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = key + "[" + std::to_string(i) + "]";
    const json& item = list[i];
    if (item.is_number()) {
      const double v = item.get<double>();
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(path, "threshold must lie in [0, 1]");
      out.push_back({false, v});
    } else if (item.is_string()) {
      const auto s = item.get<std::string>();
      double pct = -1.0;
      if (s.size() >= 2 && s[0] == 'p') {
        try {
          std::size_t used = 0;
          pct = std::stod(s.substr(1), &used);
          if (used != s.size() - 1) pct = -1.0;
        } catch (const std::exception&) {
          pct = -1.0;
        }
      }
      if (!(pct >= 0.0 && pct <= 100.0)) throw ConfigError(path, "percentile must look like \"p10\"");
      out.push_back({true, pct});
    } else {
      throw ConfigError(path, "expected a number or a percentile string");
    }
  }
  return out;
}

}  // namespace

MixtureDistribution parse_distribution(std::string_view json_text) {
  return distribution_at(parse_json(json_text), "$");
}

ExperimentConfig parse_config(std::string_view json_text) {
  const json root = parse_json(json_text);
  if (!root.is_object()) throw ConfigError("$", "expected a JSON object");

  std::vector<Procedure> procedures;
  if (root.contains("procedures")) {
    const json& list = root.at("procedures");
    if (!list.is_array() || list.empty()) throw ConfigError("procedures", "expected a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "procedures[" + std::to_string(i) + "]";
      if (!list[i].is_string()) throw ConfigError(path, "expected STR, SAR or RAN");
      try {
        procedures.push_back(parse_procedure(list[i].get<std::string>()));
      } catch (const std::invalid_argument&) {
        throw ConfigError(path, "expected STR, SAR or RAN");
      }
    }
  } else {
    procedures = {Procedure::struck, Procedure::strike_replace, Procedure::random};
  }

  const int j = int_at(root, "j", 1);
  const int d = int_at(root, "d", 1);
  const int p = int_at(root, "p", 1);

  if (!root.contains("group_model")) throw ConfigError("group_model", "required field missing");
  const json& gm = root.at("group_model");
  if (!gm.is_object()) throw ConfigError("group_model", "expected an object");
  if (!gm.contains("r")) throw ConfigError("group_model.r", "required field missing");
  const double r = number_at(gm.at("r"), "group_model.r");
  if (!(r > 0.0 && r < 1.0)) throw ConfigError("group_model.r", "must lie in (0, 1)");
  if (!gm.contains("a")) throw ConfigError("group_model.a", "required field missing");
  if (!gm.contains("b")) throw ConfigError("group_model.b", "required field missing");
  GroupModel model(r, distribution_at(gm.at("a"), "group_model.a"), distribution_at(gm.at("b"), "group_model.b"));

  if (!root.contains("n_sims")) throw ConfigError("n_sims", "required field missing");
  const json& sims = root.at("n_sims");
  if (!sims.is_number_integer() || sims.get<long long>() < 1) throw ConfigError("n_sims", "must be a positive integer");

  ExperimentConfig config{
      .procedures = std::move(procedures),
      .j = j,
      .d = d,
      .p = p,
      .model = std::move(model),
      .n_sims = sims.get<std::size_t>(),
      .seed = root.contains("seed") ? seed_at(root.at("seed")) : kDefaultSeed,
      .thresholds = thresholds_at(root, "thresholds"),
      .high_thresholds = thresholds_at(root, "high_thresholds"),
      .workers = root.contains("workers") ? int_at(root, "workers", 1) : 1,
      .output = "",
  };
  if (root.contains("output")) {
    if (!root.at("output").is_string()) throw ConfigError("output", "expected a string");
    config.output = root.at("output").get<std::string>();
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<double> resolve_thresholds(const std::vector<ThresholdSpec>& specs, const MixtureDistribution& pooled) {
  std::vector<double> out;
  for (const auto& spec : specs) out.push_back(spec.percentile ? pooled.quantile(spec.value / 100.0) : spec.value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace jury
