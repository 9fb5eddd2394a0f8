#include "birl/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "birl/environments.hpp"

namespace birl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// Parse failures carry the source location so the user can find the line.
class LineParser {
 public:
  LineParser(std::string origin, std::size_t line, std::string key)
      : where_(origin + ":" + std::to_string(line) + ": '" + key + "'") {}

  std::uint64_t integer(const std::string& value) const {
    try {
      std::size_t used = 0;
      if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
      const unsigned long long v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      fail("expects a nonnegative integer, got '" + value + "'");
    }
  }

  double real(const std::string& value) const {
    if (value == "inf") return std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      fail("expects a number, got '" + value + "'");
    }
  }

  std::vector<double> reals(const std::string& value) const {
    std::vector<double> out;
    for (const auto& item : split_list(value)) out.push_back(real(item));
    return out;
  }

  std::vector<std::size_t> integers(const std::string& value) const {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(value)) out.push_back(integer(item));
    return out;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(where_ + " " + message);
  }

 private:
  std::string where_;
};

std::string joined(std::initializer_list<const char*> names) {
  std::string out;
  for (const char* n : names) out += (out.empty() ? "" : ", ") + std::string(n);
  return out;
}

}  // namespace

std::string to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::WorkingExample: return "working-example";
    case ExperimentId::Crossover: return "crossover";
    case ExperimentId::SimulationSuite: return "simulation-suite";
    case ExperimentId::DependenceStudy: return "dependence-study";
  }
  return "?";
}

std::string to_string(Method method) {
  switch (method) {
    case Method::Ignore: return "ignore";
    case Method::Sample: return "sample";
    case Method::Maximum: return "maximum";
    case Method::DoubleMh: return "double-mh";
    case Method::Exact: return "exact";
  }
  return "?";
}

ExperimentId parse_experiment_id(const std::string& name) {
  for (auto id : {ExperimentId::WorkingExample, ExperimentId::Crossover,
                  ExperimentId::SimulationSuite, ExperimentId::DependenceStudy}) {
    if (to_string(id) == name) return id;
  }
  throw ConfigError("unknown experiment '" + name + "' (expected one of: " +
                    joined({"working-example", "crossover", "simulation-suite",
                            "dependence-study"}) +
                    ")");
}

Method parse_method(const std::string& name) {
  for (auto m : {Method::Ignore, Method::Sample, Method::Maximum, Method::DoubleMh,
                 Method::Exact}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown method '" + name + "' (expected one of: " +
                    joined({"ignore", "sample", "maximum", "double-mh", "exact"}) + ")");
}

std::vector<double> ExperimentConfig::betas_for(ExperimentId id) const {
  if (!betas.empty()) return betas;
  switch (id) {
    case ExperimentId::WorkingExample: return {0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    case ExperimentId::Crossover: return crossover_betas;
    case ExperimentId::SimulationSuite: return {5.0, 25.0};
    case ExperimentId::DependenceStudy: return {25.0};
  }
  return {};
}

void ExperimentConfig::validate() const {
  if (methods.empty()) {
    throw ConfigError("'methods' is empty; list at least one of: ignore, sample, maximum, "
                      "double-mh, exact");
  }
  if (teachers == 0) throw ConfigError("'teachers' must be at least 1");
  if (demonstrations == 0) throw ConfigError("'demonstrations' must be at least 1");
  if (samples == 0) throw ConfigError("'samples' must be at least 1");
  if (runs == 0) throw ConfigError("'runs' must be at least 1");
  if (demo_points == 0) throw ConfigError("'demo_points' must be at least 1");
  if (workers == 0) throw ConfigError("'workers' must be at least 1");
  for (double b : betas) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw ConfigError("'betas' entries must be finite and nonnegative");
    }
  }
  for (double b : crossover_betas) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw ConfigError("'crossover_betas' entries must be finite and nonnegative");
    }
  }
  for (std::size_t n : sample_sizes) {
    if (n == 0) throw ConfigError("'sample_sizes' entries must be at least 1");
  }
  if (!(half_width >= 0.0)) throw ConfigError("'dependent.half_width' must be nonnegative");
  if (!(teacher_proposal_scale > 0.0)) {
    throw ConfigError("'teacher.proposal_scale' must be positive");
  }
  mh.validate();
  inner.validate();
  make_environment(environment, environment_params);
}

void ExperimentConfig::validate_for(ExperimentId id) const {
  validate();
  if (experiment && *experiment != id) {
    throw ConfigError("config is for experiment '" + to_string(*experiment) +
                      "' but '" + to_string(id) + "' was requested");
  }
  if (id == ExperimentId::DependenceStudy) {
    auto env = make_environment(environment, environment_params);
    if (!env->coordinate_separable()) {
      throw ConfigError("dependence-study needs a coordinate-separable environment");
    }
    for (std::size_t c = 0; c < env->state_dim(); ++c) {
      if (env->bounds().periodic[c]) {
        throw ConfigError("dependence-study needs an environment without periodic coordinates");
      }
    }
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  ExperimentConfig cfg;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value', got '" +
                        line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const LineParser p(origin, line_no, key);
    if (key.empty()) p.fail("has an empty key");

    if (key.starts_with("env.")) {
      cfg.environment_params[key.substr(4)] = value;
    } else if (key == "experiment") {
      cfg.experiment = parse_experiment_id(value);
    } else if (key == "environment") {
      cfg.environment = value;
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& name : split_list(value)) cfg.methods.push_back(parse_method(name));
    } else if (key == "betas") {
      cfg.betas = p.reals(value);
    } else if (key == "samples") {
      cfg.samples = p.integer(value);
    } else if (key == "demonstrations") {
      cfg.demonstrations = p.integer(value);
    } else if (key == "teachers") {
      cfg.teachers = p.integer(value);
    } else if (key == "seed") {
      cfg.seed = p.integer(value);
    } else if (key == "mh.iterations") {
      cfg.mh.iterations = p.integer(value);
    } else if (key == "mh.burn_in") {
      cfg.mh.burn_in = p.integer(value);
    } else if (key == "mh.thinning") {
      cfg.mh.thinning = p.integer(value);
    } else if (key == "mh.proposal_scale") {
      cfg.mh.proposal_scale = p.real(value);
    } else if (key == "inner.iterations") {
      cfg.inner.iterations = p.integer(value);
    } else if (key == "inner.proposal_scale") {
      cfg.inner.proposal_scale = p.real(value);
    } else if (key == "teacher.burn_in") {
      cfg.teacher_burn_in = p.integer(value);
    } else if (key == "teacher.proposal_scale") {
      cfg.teacher_proposal_scale = p.real(value);
    } else if (key == "dependent.half_width") {
      cfg.half_width = p.real(value);
    } else if (key == "workers") {
      cfg.workers = p.integer(value);
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "runs") {
      cfg.runs = p.integer(value);
    } else if (key == "sample_sizes") {
      cfg.sample_sizes = p.integers(value);
    } else if (key == "crossover_betas") {
      cfg.crossover_betas = p.reals(value);
    } else if (key == "demo_points") {
      cfg.demo_points = p.integer(value);
    } else {
      p.fail("is not a known key");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

}  // namespace birl
