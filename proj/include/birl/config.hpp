#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "birl/inference.hpp"

namespace birl {

enum class ExperimentId { WorkingExample, Crossover, SimulationSuite, DependenceStudy };

enum class Method { Ignore, Sample, Maximum, DoubleMh, Exact };

std::string to_string(ExperimentId id);
std::string to_string(Method method);
/// Throws ConfigError listing the accepted names.
ExperimentId parse_experiment_id(const std::string& name);
Method parse_method(const std::string& name);

/// Everything an experiment run needs. Loaded from a `key = value` file;
/// unset keys keep the defaults below.
struct ExperimentConfig {
  std::optional<ExperimentId> experiment;
  std::string environment = "path";
  /// `env.<key>` entries, handed to make_environment.
  std::map<std::string, std::string> environment_params;
  std::vector<Method> methods = {Method::Ignore, Method::Sample, Method::Maximum,
                                 Method::DoubleMh};
  /// Empty means the experiment's own default.
  std::vector<double> betas;
  /// N for the sampling normalizer.
  std::size_t samples = 10;
  /// K trajectories per teacher.
  std::size_t demonstrations = 3;
  std::size_t teachers = 20;
  std::uint64_t seed = 1;
  MhConfig mh{6000, 1000, 1, 0.15, 0};
  InnerConfig inner;
  std::size_t teacher_burn_in = 2000;
  double teacher_proposal_scale = 0.1;
  /// Dataset-space half-width for dependent learners (fraction of range).
  double half_width = std::numeric_limits<double>::infinity();
  std::size_t workers = 1;
  std::filesystem::path out = "results";

  // Working example and crossover.
  std::size_t runs = 100;
  std::vector<std::size_t> sample_sizes = {1, 10, 100, 1000, 10000};
  std::vector<double> crossover_betas = {0.5, 5.0};
  std::size_t demo_points = 11;

  /// Betas for `id`: the configured list, or the experiment default.
  std::vector<double> betas_for(ExperimentId id) const;
  /// Throws ConfigError with an actionable message.
  void validate() const;
  /// Validates the pieces specific to one experiment, including building
  /// the environment.
  void validate_for(ExperimentId id) const;
};

/// Parses `key = value` lines; `#` starts a comment. `origin` names the
/// source in error messages.
ExperimentConfig parse_config(std::istream& in, const std::string& origin);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace birl
