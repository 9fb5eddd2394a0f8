#include <doctest.h>

#include <cmath>
#include <sstream>

#include "birl/config.hpp"

using namespace birl;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.conf");
}

std::string error_of(const std::string& text) {
  try {
    parse(text).validate();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parses every key") {
  const auto cfg = parse(
      "# comment\n"
      "experiment = simulation-suite\n"
      "environment = path\n"
      "env.waypoints = 2   # trailing comment\n"
      "env.height = true\n"
      "methods = ignore, double-mh, exact\n"
      "betas = 5, 25\n"
      "samples = 12\n"
      "demonstrations = 4\n"
      "teachers = 3\n"
      "seed = 99\n"
      "mh.iterations = 700\n"
      "mh.burn_in = 100\n"
      "mh.thinning = 2\n"
      "mh.proposal_scale = 0.2\n"
      "inner.iterations = 50\n"
      "inner.proposal_scale = 0.05\n"
      "teacher.burn_in = 300\n"
      "teacher.proposal_scale = 0.2\n"
      "dependent.half_width = 0.25\n"
      "workers = 2\n"
      "out = somewhere\n"
      "runs = 5\n"
      "sample_sizes = 1, 10\n"
      "crossover_betas = 1, 2\n"
      "demo_points = 3\n");
  CHECK(cfg.experiment == ExperimentId::SimulationSuite);
  CHECK(cfg.environment_params.at("waypoints") == "2");
  CHECK(cfg.environment_params.at("height") == "true");
  CHECK(cfg.methods == std::vector<Method>{Method::Ignore, Method::DoubleMh, Method::Exact});
  CHECK(cfg.betas == std::vector<double>{5.0, 25.0});
  CHECK(cfg.samples == 12);
  CHECK(cfg.demonstrations == 4);
  CHECK(cfg.teachers == 3);
  CHECK(cfg.seed == 99);
  CHECK(cfg.mh.iterations == 700);
  CHECK(cfg.mh.burn_in == 100);
  CHECK(cfg.mh.thinning == 2);
  CHECK(cfg.mh.proposal_scale == 0.2);
  CHECK(cfg.inner.iterations == 50);
  CHECK(cfg.inner.proposal_scale == 0.05);
  CHECK(cfg.teacher_burn_in == 300);
  CHECK(cfg.teacher_proposal_scale == 0.2);
  CHECK(cfg.half_width == 0.25);
  CHECK(cfg.workers == 2);
  CHECK(cfg.out == "somewhere");
  CHECK(cfg.runs == 5);
  CHECK(cfg.sample_sizes == std::vector<std::size_t>{1, 10});
  CHECK(cfg.crossover_betas == std::vector<double>{1.0, 2.0});
  CHECK(cfg.demo_points == 3);
  cfg.validate_for(ExperimentId::SimulationSuite);
}

TEST_CASE("defaults and per-experiment betas") {
  const auto cfg = parse("");
  CHECK(cfg.methods.size() == 4);
  CHECK(std::isinf(cfg.half_width));
  CHECK(cfg.betas_for(ExperimentId::SimulationSuite) == std::vector<double>{5.0, 25.0});
  CHECK(cfg.teachers == 20);
  CHECK(cfg.betas_for(ExperimentId::DependenceStudy) == std::vector<double>{25.0});
}

TEST_CASE("validation errors name the problem") {
  CHECK(error_of("methods =\n").find("method") != std::string::npos);
  CHECK(error_of("methods = ignore, bayes\n").find("bayes") != std::string::npos);
  CHECK(error_of("methods = ignore, bayes\n").find("double-mh") != std::string::npos);
  CHECK(error_of("environment = push\n").find("push") != std::string::npos);
  CHECK(error_of("experiment = everything\n").find("working-example") != std::string::npos);
  CHECK(error_of("teachers = 0\n").find("teacher") != std::string::npos);
  CHECK(error_of("colour = red\n").find("test.conf:1") != std::string::npos);
  CHECK(error_of("\nsamples = ten\n").find("test.conf:2") != std::string::npos);
  CHECK(error_of("mh.iterations = 10\nmh.burn_in = 10\n").find("burn") != std::string::npos);
  CHECK(error_of("env.colour = red\n").find("colour") != std::string::npos);
  CHECK(error_of("no equals sign\n").find("test.conf:1") != std::string::npos);
  CHECK(error_of("betas = 5, -1\n") != "");
}

TEST_CASE("experiment-specific validation") {
  auto cfg = parse("experiment = crossover\nenvironment = cup\n");
  CHECK_NOTHROW(cfg.validate_for(ExperimentId::Crossover));
  CHECK_THROWS_AS(cfg.validate_for(ExperimentId::WorkingExample), ConfigError);
  const auto sphere = parse("environment = sphere\n");
  CHECK_THROWS_AS(sphere.validate_for(ExperimentId::DependenceStudy), ConfigError);
  CHECK_NOTHROW(sphere.validate_for(ExperimentId::SimulationSuite));
}

TEST_CASE("names round-trip") {
  for (auto id : {ExperimentId::WorkingExample, ExperimentId::Crossover,
                  ExperimentId::SimulationSuite, ExperimentId::DependenceStudy}) {
    CHECK(parse_experiment_id(to_string(id)) == id);
  }
  for (auto m : {Method::Ignore, Method::Sample, Method::Maximum, Method::DoubleMh, Method::Exact}) {
    CHECK(parse_method(to_string(m)) == m);
  }
}

TEST_CASE("missing files are reported with their path") {
  try {
    load_config("/nonexistent/x.conf");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/x.conf") != std::string::npos);
  }
}
