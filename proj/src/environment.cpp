#include "birl/environment.hpp"

#include <algorithm>
#include <cmath>

namespace birl {

namespace {

constexpr double kBoundsSlack = 1e-12;

void check_theta(const RewardParams& theta, const Environment& env) {
  if (theta.dimension() != env.feature_dim()) {
    throw ContractViolation("reward parameter dimension " + std::to_string(theta.dimension()) +
                            " does not match feature dimension " +
                            std::to_string(env.feature_dim()) + " of environment '" +
                            env.name() + "'");
  }
}

void check_shape(const Trajectory& xi, const Environment& env) {
  if (xi.empty()) throw ContractViolation("trajectory is empty");
  if (xi.state_dim() != env.state_dim()) {
    throw ContractViolation("trajectory state dimension " + std::to_string(xi.state_dim()) +
                            " does not match environment '" + env.name() + "' (" +
                            std::to_string(env.state_dim()) + ")");
  }
}

}  // namespace

Environment::Environment(EnvironmentShape shape) : shape_(std::move(shape)) {
  auto& b = shape_.bounds;
  if (b.dim() == 0 || b.upper.size() != b.dim()) {
    throw ConfigError("environment '" + shape_.name + "': malformed state bounds");
  }
  if (b.periodic.empty()) b.periodic.assign(b.dim(), false);
  if (b.periodic.size() != b.dim()) {
    throw ConfigError("environment '" + shape_.name + "': periodic flags do not match bounds");
  }
  for (std::size_t c = 0; c < b.dim(); ++c) {
    if (!(b.upper[c] >= b.lower[c])) {
      throw ConfigError("environment '" + shape_.name + "': upper bound below lower bound");
    }
  }
  if (shape_.horizon == 0) throw ConfigError("environment '" + shape_.name + "': horizon must be >= 1");
  if (shape_.feature_dim == 0) {
    throw ConfigError("environment '" + shape_.name + "': feature dimension must be >= 1");
  }
  if (shape_.grid_resolution < 2) {
    throw ConfigError("environment '" + shape_.name +
                      "': quadrature resolution must be at least 2 points per dimension");
  }
  if (!(shape_.correction_penalty >= 0.0) || !std::isfinite(shape_.correction_penalty)) {
    throw ConfigError("environment '" + shape_.name + "': correction penalty must be finite and >= 0");
  }
}

void Environment::coordinate_features(std::size_t, double, std::span<double>) const {
  throw ContractViolation("environment '" + name() + "' is not coordinate-separable");
}

bool Environment::contains(State s) const {
  const auto& b = bounds();
  if (s.size() != b.dim()) return false;
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (!(s[c] >= b.lower[c] - kBoundsSlack && s[c] <= b.upper[c] + kBoundsSlack)) return false;
  }
  return true;
}

void Environment::validate(const Trajectory& xi) const {
  check_shape(xi, *this);
  if (xi.length() != horizon()) {
    throw ContractViolation("trajectory length " + std::to_string(xi.length()) +
                            " does not match horizon " + std::to_string(horizon()) +
                            " of environment '" + name() + "'");
  }
  for (std::size_t t = 0; t < xi.length(); ++t) {
    if (!contains(xi.state(t))) {
      throw ContractViolation("state " + std::to_string(t) + " lies outside the bounds of '" +
                              name() + "'");
    }
  }
}

double state_reward(State s, const RewardParams& theta, const Environment& env) {
  check_theta(theta, env);
  if (s.size() != env.state_dim()) throw ContractViolation("state dimension mismatch");
  Vector phi(env.feature_dim());
  env.state_features(s, phi);
  return dot(theta.values(), phi);
}

FeatureVector feature_vector(const Trajectory& xi, const Environment& env) {
  check_shape(xi, env);
  FeatureVector total(env.feature_dim(), 0.0);
  Vector phi(env.feature_dim());
  for (std::size_t t = 0; t < xi.length(); ++t) {
    env.state_features(xi.state(t), phi);
    for (std::size_t j = 0; j < phi.size(); ++j) total[j] += phi[j];
  }
  return total;
}

double trajectory_reward(const Trajectory& xi, const RewardParams& theta, const Environment& env) {
  check_theta(theta, env);
  return dot(theta.values(), feature_vector(xi, env));
}

double dataset_reward_independent(const Dataset& data, const RewardParams& theta,
                                  const Environment& env) {
  if (data.dependence() != Dependence::Independent) {
    throw ContractViolation("dataset_reward_independent requires an independent dataset");
  }
  // Summed in sorted order so any permutation of the data gives the same bits.
  Vector rewards;
  rewards.reserve(data.size());
  for (const auto& xi : data.trajectories()) rewards.push_back(trajectory_reward(xi, theta, env));
  std::sort(rewards.begin(), rewards.end());
  double total = 0.0;
  for (double r : rewards) total += r;
  return total;
}

double dependent_penalty(const Dataset& data, const Environment& env) {
  if (data.dependence() != Dependence::Dependent) {
    throw ContractViolation("displacement penalty requires a dependent dataset");
  }
  double total = 0.0;
  const Trajectory* previous = &data.initial();
  for (const auto& xi : data.trajectories()) {
    total += squared_distance(xi, *previous);
    previous = &xi;
  }
  return env.correction_penalty() * total;
}

double dataset_reward_dependent(const Dataset& data, const RewardParams& theta,
                                const Environment& env) {
  if (data.dependence() != Dependence::Dependent) {
    throw ContractViolation("dataset_reward_dependent requires a dependent dataset");
  }
  double total = 0.0;
  for (const auto& xi : data.trajectories()) total += trajectory_reward(xi, theta, env);
  return total - dependent_penalty(data, env);
}

double dataset_reward(const Dataset& data, const RewardParams& theta, const Environment& env) {
  return data.dependence() == Dependence::Independent
             ? dataset_reward_independent(data, theta, env)
             : dataset_reward_dependent(data, theta, env);
}

}  // namespace birl
