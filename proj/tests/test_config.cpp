#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "jury/config.hpp"

using namespace jury;

namespace {

const char* kExample = R"({
  "procedures": ["STR", "SAR", "RAN"],
  "j": 12, "d": 6, "p": 6,
  "group_model": {"r": 0.25, "a": {"beta": [2, 4]}, "b": {"beta": [4, 2]}},
  "n_sims": 50000,
  "seed": 12345,
  "thresholds": [0.3, "p10", 0.05],
  "high_thresholds": ["p95"]
})";

std::string error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

std::string with(const std::string& field) {
  return R"({"j": 1, "d": 1, "p": 1, "n_sims": 10,
    "group_model": {"r": 0.1, "a": {"uniform": [0, 0.5]}, "b": {"uniform": [0.5, 1]}})" +
         field + "}";
}

}  // namespace

TEST_CASE("full example") {
  const auto c = parse_config(kExample);
  CHECK(c.procedures.size() == 3);
  CHECK(c.j == 12);
  CHECK(c.d == 6);
  CHECK(c.n_sims == 50000);
  CHECK(c.seed == 12345);
  CHECK(c.model.r() == 0.25);
  CHECK(c.model.dist_a().mean() == doctest::Approx(1.0 / 3));
  REQUIRE(c.thresholds.size() == 3);
  CHECK(c.thresholds[1].percentile);
  CHECK(c.thresholds[1].value == 10.0);
  CHECK(c.workers == 1);

  const auto t = resolve_thresholds(c.thresholds, c.model.pooled());
  REQUIRE(t.size() == 3);
  CHECK(t[0] == 0.05);
  CHECK(c.model.pooled().cdf(t[1]) == doctest::Approx(0.10).epsilon(1e-9));
  CHECK(t[2] == 0.3);
}

TEST_CASE("defaults") {
  const auto c = parse_config(with(""));
  CHECK(c.procedures.size() == 3);
  CHECK(c.seed == kDefaultSeed);
  CHECK(c.thresholds.empty());
}

TEST_CASE("seed forms") {
  CHECK(parse_config(with(R"(, "seed": "0x5EED0301")")).seed == 0x5EED0301);
  CHECK(parse_config(with(R"(, "seed": "42")")).seed == 42);
  CHECK(error_path(with(R"(, "seed": -1)")) == "seed");
  CHECK(error_path(with(R"(, "seed": "12abc")")) == "seed");
}

TEST_CASE("errors name the field") {
  CHECK(error_path(with(R"(, "procedures": ["XYZ"])")) == "procedures[0]");
  CHECK(error_path(R"({"j": 0})") == "j");
  CHECK(error_path(with(R"(, "thresholds": [1.5])")) == "thresholds[0]");
  CHECK(error_path(with(R"(, "thresholds": ["q10"])")) == "thresholds[0]");
  CHECK(error_path("{not json") == "$");
  CHECK(error_path(R"({"j": 1, "d": 1, "p": 1, "n_sims": 0,
      "group_model": {"r": 0.1, "a": {"uniform": [0, 0.5]}, "b": {"uniform": [0.5, 1]}}})") == "n_sims");
  CHECK(error_path(R"({"j": 1, "d": 1, "p": 1, "n_sims": 5,
      "group_model": {"r": 1.0, "a": {"uniform": [0, 0.5]}, "b": {"uniform": [0.5, 1]}}})") == "group_model.r");
  CHECK(error_path(R"({"j": 1, "d": 1, "p": 1, "n_sims": 5,
      "group_model": {"r": 0.5, "a": {"mixture": [{"w": 0.5, "beta": [1, 5]}, {"beta": [2, 2]}]},
                      "b": {"uniform": [0.5, 1]}}})") == "group_model.a.mixture[1].w");
  CHECK(error_path(R"({"j": 1, "d": 1, "p": 1, "n_sims": 5,
      "group_model": {"r": 0.5, "a": {"uniform": [0, 0.5]}}})") == "group_model.b");
}

TEST_CASE("distribution literals") {
  const auto m = parse_distribution(R"({"mixture":[{"w":0.25,"beta":[1,5]},{"w":0.75,"uniform":[0.5,1]}]})");
  CHECK(m.mean() == doctest::Approx(0.25 / 6 + 0.75 * 0.75));
  CHECK(parse_distribution(R"({"uniform":[0,1]})").cdf(0.3) == doctest::Approx(0.3));
  CHECK_THROWS_AS(parse_distribution(R"({"normal":[0,1]})"), ConfigError);
  CHECK_THROWS_AS(parse_distribution(R"({"mixture":[{"w":0.5,"uniform":[0,1]}]})"), ConfigError);
}

TEST_CASE("load from file") {
  const auto path = std::filesystem::temp_directory_path() / "jury_config_test.json";
  std::ofstream(path) << kExample;
  CHECK(load_config(path).j == 12);
  std::filesystem::remove(path);
  CHECK_THROWS(load_config(path));
}
