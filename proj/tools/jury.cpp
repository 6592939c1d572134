#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "jury/config.hpp"
#include "jury/csv.hpp"
#include "jury/metrics.hpp"
#include "jury/oracle.hpp"
#include "jury/presets.hpp"
#include "jury/sar_solver.hpp"
#include "jury/simulation.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kOracleFailure = 3;

void write_file(const fs::path& dir, const std::string& name, const std::string& contents) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << contents;
}

void emit(const std::optional<std::string>& out_dir, const jury::PresetOutput& output) {
  if (out_dir) {
    for (const auto& f : output.files) write_file(*out_dir, f.name, f.contents);
    std::cerr << output.report;
  } else {
    std::cout << output.files.front().contents;
    std::cerr << output.report;
  }
}

int default_workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

bool preflight() {
  bool ok = true;
  for (const auto& check : jury::run_oracle_checks()) {
    if (!check.passed) {
      std::cerr << "oracle check failed: " << check.name << " (" << check.detail << ")\n";
      ok = false;
    }
  }
  return ok;
}

std::string oracle_text(const std::vector<jury::ReportRow>& rows) {
  std::ostringstream os;
  os << "Two-group example, j = d = p = 1, r = 0.1, C_a ~ U[0,0.5], C_b ~ U[0.5,1]\n\n";
  for (const auto& row : rows) {
    os << "  " << row.quantity;
    for (std::size_t pad = row.quantity.size(); pad < 48; ++pad) os << ' ';
    os << "computed " << jury::format_number(row.computed_value);
    if (row.paper_value) {
      os << "   printed " << jury::format_number(*row.paper_value) << "   diff "
         << jury::format_number(row.computed_value - *row.paper_value);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jury selection procedures: equilibrium solver, simulator and replication presets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(jury::version_string()));

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Strike-and-Replace equilibrium table as CSV");
  std::string dist_json;
  int j = 12, d = 6, p = 6;
  solve_cmd->add_option("--dist", dist_json, "Distribution literal, e.g. '{\"uniform\":[0,1]}'")->required();
  solve_cmd->add_option("--j", j, "Jury size")->check(CLI::Range(1, 1000));
  solve_cmd->add_option("--d", d, "Defendant challenges")->check(CLI::Range(0, 1000));
  solve_cmd->add_option("--p", p, "Plaintiff challenges")->check(CLI::Range(0, 1000));

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Run one configured experiment");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sims;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
  std::size_t trace = 0;
  sim_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  sim_cmd->add_option("--seed", seed, "Override the config seed");
  sim_cmd->add_option("--sims", sims, "Override n_sims")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", out_dir, "Output directory (default: summary CSV on stdout)");
  sim_cmd->add_option("--trace", trace, "Also write per-juror rows for the first N replications");

  // analytic
  auto* an_cmd = app.add_subcommand("analytic", "Closed-form at-least-x probabilities for STR and RAN");
  bool at_median = false;
  std::optional<double> fc;
  an_cmd->add_flag("--median", at_median, "Evaluate at the median (F(c) = 1/2)");
  an_cmd->add_option("--fc", fc, "Evaluate at F(c) = value")->check(CLI::Range(0.0, 1.0));
  an_cmd->add_option("--j", j, "Jury size")->check(CLI::Range(1, 1000));
  an_cmd->add_option("--d", d, "Defendant challenges")->check(CLI::Range(0, 1000));
  an_cmd->add_option("--p", p, "Plaintiff challenges")->check(CLI::Range(0, 1000));

  // oracle
  auto* or_cmd = app.add_subcommand("oracle", "Exact cross-checks and the worked two-group example");
  std::string oracle_preset = "sec3";
  or_cmd->add_option("--preset", oracle_preset, "Report to print")->check(CLI::IsMember({"sec3"}));
  or_cmd->add_option("--out", out_dir, "Directory for the CSV report");

  // replicate
  auto* rep_cmd = app.add_subcommand("replicate", "Regenerate a figure or table as CSV");
  std::string preset_name;
  bool skip_oracle = false;
  rep_cmd->add_option("preset", preset_name, "Preset name")->required()->check(CLI::IsMember(jury::preset_names()));
  rep_cmd->add_option("--out", out_dir, "Output directory (default: out)");
  rep_cmd->add_option("--seed", seed, "Override the preset seed");
  rep_cmd->add_option("--sims", sims, "Override replications per scenario")->check(CLI::PositiveNumber);
  rep_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  rep_cmd->add_flag("--skip-oracle", skip_oracle, "Skip the oracle pre-flight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*solve_cmd) {
      const auto dist = jury::parse_distribution(dist_json);
      jury::solve(dist, j, d, p).write_csv(std::cout);
      return kOk;
    }

    if (*sim_cmd) {
      jury::ExperimentConfig config = jury::load_config(config_path);
      if (seed) config.seed = *seed;
      if (sims) config.n_sims = *sims;
      if (workers) config.workers = *workers;
      if (out_dir) config.output = *out_dir;
      const jury::Preset preset = jury::preset_from_config(config);
      const jury::PresetOutput output = jury::run_preset(preset, config.workers);
      const std::optional<std::string> dir =
          config.output.empty() ? std::nullopt : std::optional<std::string>(config.output);
      emit(dir, output);
      if (trace > 0) {
        std::ostringstream os;
        jury::write_trace(os, preset.scenarios.front().request, trace);
        if (dir) {
          write_file(*dir, "simulate_trace.csv", os.str());
        } else {
          std::cout << '\n' << os.str();
        }
      }
      return kOk;
    }

    if (*an_cmd) {
      if (at_median == fc.has_value()) throw jury::ConfigError("--median/--fc", "give exactly one of them");
      const double f = fc.value_or(0.5);
      jury::CsvTable table({"x", "t_ran", "t_str"});
      for (int x = 0; x <= j; ++x) {
        table.add_row({std::to_string(x), jury::format_number(jury::analytic_T_ran(j, f, x)),
                       jury::format_number(jury::analytic_T_str(j, d, p, f, x))});
      }
      std::cout << table.to_string();
      return kOk;
    }

    if (*or_cmd) {
      bool ok = true;
      std::cout << "Oracle checks\n";
      for (const auto& check : jury::run_oracle_checks()) {
        std::cout << "  [" << (check.passed ? "ok" : "FAIL") << "] " << check.name << "  " << check.detail << '\n';
        ok = ok && check.passed;
      }
      const auto rows = jury::sec3_report();
      std::cout << '\n' << oracle_text(rows);
      if (out_dir) {
        jury::CsvTable csv({"quantity", "paper_value", "computed_value", "abs_diff"});
        for (const auto& row : rows) {
          csv.add_row({row.quantity, jury::format_optional(row.paper_value), jury::format_number(row.computed_value),
                       row.paper_value ? jury::format_number(std::abs(row.computed_value - *row.paper_value)) : ""});
        }
        write_file(*out_dir, "oracle_sec3.csv", csv.to_string());
      }
      return ok ? kOk : kOracleFailure;
    }

    if (*rep_cmd) {
      if (!skip_oracle && !preflight()) return kOracleFailure;
      const jury::Preset preset = jury::build_preset(preset_name, {seed, sims});
      const jury::PresetOutput output = jury::run_preset(preset, workers.value_or(default_workers()));
      emit(out_dir.value_or("out"), output);
      return kOk;
    }
  } catch (const jury::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
