// irl: run the reward-learning experiments from a config file.
//
//   irl run <experiment-id> --config <path> [--out <dir>] [--workers n]
//           [--teachers n] [--assert]
//   irl validate --config <path>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "birl/config.hpp"
#include "birl/experiments.hpp"

namespace {

int run(const std::string& experiment, const std::string& config_path, const std::string& out,
        std::size_t workers, std::size_t teachers, bool assert_claims) {
  const auto id = birl::parse_experiment_id(experiment);
  auto cfg = birl::load_config(config_path);
  if (!out.empty()) cfg.out = out;
  if (workers > 0) cfg.workers = workers;
  if (teachers > 0) cfg.teachers = teachers;
  cfg.validate_for(id);

  const auto start = std::chrono::steady_clock::now();
  const auto report = birl::run_experiment(id, cfg, &std::cout);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const auto& path : report.files) std::cout << "wrote " << path.string() << '\n';
  for (const auto& c : report.claims) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
  }
  std::cout << experiment << " finished in " << seconds << " s\n";
  return assert_claims && !report.all_passed() ? 1 : 0;
}

int validate(const std::string& config_path) {
  const auto cfg = birl::load_config(config_path);
  if (cfg.experiment) {
    cfg.validate_for(*cfg.experiment);
  } else {
    cfg.validate();
  }
  std::cout << config_path << ": ok";
  if (cfg.experiment) std::cout << " (" << birl::to_string(*cfg.experiment) << ")";
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian reward learning with normalizer approximations"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write its CSVs");
  std::string experiment;
  std::string config_path;
  std::string out;
  std::size_t workers = 0;
  std::size_t teachers = 0;
  bool assert_claims = false;
  run_cmd->add_option("experiment", experiment,
                      "working-example | crossover | simulation-suite | dependence-study")
      ->required();
  run_cmd->add_option("--config", config_path, "Config file")->required();
  run_cmd->add_option("--out", out, "Output directory (overrides the config)");
  run_cmd->add_option("--workers", workers, "Worker threads (overrides the config)");
  run_cmd->add_option("--teachers", teachers, "Simulated teachers (overrides the config)");
  run_cmd->add_flag("--assert", assert_claims, "Exit nonzero if a claimed comparison fails");

  auto* validate_cmd = app.add_subcommand("validate", "Check a config file");
  std::string validate_path;
  validate_cmd->add_option("--config", validate_path, "Config file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return run(experiment, config_path, out, workers, teachers, assert_claims);
    return validate(validate_path);
  } catch (const birl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
