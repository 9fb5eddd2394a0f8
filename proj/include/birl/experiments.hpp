#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "birl/config.hpp"
#include "birl/metrics.hpp"

namespace birl {

/// One named comparison an experiment claims, with the numbers behind it.
struct Claim {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  ExperimentId experiment = ExperimentId::WorkingExample;
  std::vector<std::filesystem::path> files;
  std::vector<Claim> claims;

  bool all_passed() const;
};

/// Runs `fn(i)` for i in [0, n) on at most `workers` threads. Each index is
/// handled exactly once; results must be written to per-index slots.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

// ------------------------------------------------------------ belief sweeps

/// Row of working_example.csv / crossover.csv. `demo` is empty on rows that
/// average over the demo grid; `std_error` is empty for deterministic rows.
struct BeliefRow {
  std::string sweep;
  std::string strategy;
  double beta = 0.0;
  std::size_t samples = 0;
  std::optional<double> demo;
  double mean_belief_error = 0.0;
  std::optional<double> std_error;
};

std::string belief_row_header();
std::string to_csv_row(const BeliefRow& row);

/// Evenly spaced cup angles over [0, pi/2], endpoints included.
std::vector<double> demo_grid(std::size_t points);

/// ignore-vs-beta, maximum-vs-beta, sampling-vs-n (beta = 1) and the
/// crossover table, in that order.
std::vector<BeliefRow> working_example_rows(const ExperimentConfig& cfg);
/// Sampling (N = cfg.samples) vs Maximum at each crossover beta: one row per
/// demo plus one row averaged over the grid.
std::vector<BeliefRow> crossover_rows(const ExperimentConfig& cfg);

std::vector<Claim> working_example_claims(const std::vector<BeliefRow>& rows,
                                          const ExperimentConfig& cfg);
std::vector<Claim> crossover_claims(const std::vector<BeliefRow>& rows);

// -------------------------------------------------------- teacher studies

/// All records of a simulation suite or dependence study, ordered by beta,
/// teacher, learner mode and method. Failures become rows with an error
/// status.
std::vector<EvalRecord> evaluate_teachers(const ExperimentConfig& cfg, ExperimentId id);

struct SummaryRow {
  std::string environment;
  std::string method;
  Dependence learner_mode = Dependence::Independent;
  Dependence data_mode = Dependence::Independent;
  double beta = 0.0;
  std::size_t teachers = 0;
  std::size_t failures = 0;
  double mean_error = 0.0;
  double se_error = 0.0;
  double mean_regret = 0.0;
  double se_regret = 0.0;
  double mean_acceptance = 0.0;
};

std::string summary_header();
std::string to_csv_row(const SummaryRow& row);
/// Mean and standard error per (beta, learner mode, method), in record order.
std::vector<SummaryRow> summarize(const std::vector<EvalRecord>& records);

std::vector<Claim> simulation_suite_claims(const std::vector<SummaryRow>& summary);
std::vector<Claim> dependence_study_claims(const std::vector<SummaryRow>& summary);

/// Mean wall time per outer iteration for each method, and Double MH's
/// ratio to the mean of the baselines (ignore, sample, maximum).
struct RuntimeReport {
  std::vector<std::pair<std::string, double>> seconds_per_iteration;
  std::optional<double> double_mh_ratio;
};

RuntimeReport runtime_report(const std::vector<EvalRecord>& records);
void write_runtime_report(const RuntimeReport& report, std::ostream& out);

// ------------------------------------------------------------ entry points

/// Runs the experiment and writes its CSVs under cfg.out. Timing goes to
/// runtime.txt only, so the CSVs are byte-identical across reruns.
ExperimentReport run_working_example(const ExperimentConfig& cfg);
ExperimentReport run_crossover(const ExperimentConfig& cfg);
ExperimentReport run_simulation_suite(const ExperimentConfig& cfg, std::ostream* log = nullptr);
ExperimentReport run_dependence_study(const ExperimentConfig& cfg, std::ostream* log = nullptr);
ExperimentReport run_experiment(ExperimentId id, const ExperimentConfig& cfg,
                                std::ostream* log = nullptr);

}  // namespace birl
