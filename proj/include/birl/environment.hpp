#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "birl/core.hpp"

namespace birl {

/// Axis-aligned state box. Periodic coordinates wrap around [lower, upper).
struct Bounds {
  Vector lower;
  Vector upper;
  std::vector<bool> periodic;

  std::size_t dim() const { return lower.size(); }
  double width(std::size_t c) const { return upper[c] - lower[c]; }
};

/// Support of the reward prior: the whole unit sphere, or its positive
/// orthant when features are nonnegative tradeoffs.
enum class ThetaDomain { Sphere, PositiveOrthant };

struct EnvironmentShape {
  std::string name;
  Bounds bounds;
  std::size_t horizon = 1;
  std::size_t feature_dim = 1;
  /// Midpoint-rule points per coordinate for quadrature and argmax grids.
  std::size_t grid_resolution = 10000;
  ThetaDomain theta_domain = ThetaDomain::Sphere;
  /// Weight on ||xi_i - xi_{i-1}||^2 in the dependent-corrections reward.
  double correction_penalty = 1.0;
  /// Robot trajectory that dependent corrections start from.
  Trajectory initial;
  /// Informational only: learning works on state sequences.
  std::string dynamics = "waypoints are free (identity dynamics)";
};

/// Bounded state space, horizon and per-state feature map phi. Rewards are
/// linear, r(s, theta) = theta . phi(s), and Phi(xi) sums phi over the states
/// of xi. Immutable after construction.
class Environment {
 public:
  virtual ~Environment() = default;

  const std::string& name() const { return shape_.name; }
  std::size_t state_dim() const { return shape_.bounds.dim(); }
  std::size_t horizon() const { return shape_.horizon; }
  std::size_t feature_dim() const { return shape_.feature_dim; }
  std::size_t grid_resolution() const { return shape_.grid_resolution; }
  ThetaDomain theta_domain() const { return shape_.theta_domain; }
  double correction_penalty() const { return shape_.correction_penalty; }
  const Bounds& bounds() const { return shape_.bounds; }
  const Trajectory& initial_trajectory() const { return shape_.initial; }
  const std::string& dynamics() const { return shape_.dynamics; }

  /// Finite hypothesis list for discrete-theta problems; empty otherwise.
  virtual std::vector<Vector> hypotheses() const { return {}; }

  /// phi(s), written to `out` (length feature_dim()).
  virtual void state_features(State s, std::span<double> out) const = 0;

  /// True when phi(s) = sum_c g_c(s_c). Quadrature and argmax then factor
  /// into one-dimensional problems per coordinate.
  virtual bool coordinate_separable() const { return false; }
  /// g_c(x); only meaningful for separable environments.
  virtual void coordinate_features(std::size_t coord, double x, std::span<double> out) const;

  bool contains(State s) const;
  /// Throws ContractViolation unless xi has this environment's horizon,
  /// state dimension and bounds.
  void validate(const Trajectory& xi) const;

 protected:
  explicit Environment(EnvironmentShape shape);

 private:
  EnvironmentShape shape_;
};

double state_reward(State s, const RewardParams& theta, const Environment& env);

FeatureVector feature_vector(const Trajectory& xi, const Environment& env);

/// R(xi, theta) = sum over states of r(s, theta).
double trajectory_reward(const Trajectory& xi, const RewardParams& theta, const Environment& env);

/// sum_i R(xi_i, theta) for an independent dataset.
double dataset_reward_independent(const Dataset& data, const RewardParams& theta,
                                  const Environment& env);

/// sum_i [R(xi_i, theta) - w ||xi_i - xi_{i-1}||^2] over the corrections,
/// with xi_0 the robot's initial trajectory and w the environment's
/// correction penalty. The initial trajectory earns no reward term.
double dataset_reward_dependent(const Dataset& data, const RewardParams& theta,
                                const Environment& env);

/// Sum of the displacement penalties alone (theta-independent part).
double dependent_penalty(const Dataset& data, const Environment& env);

/// Dispatches on the dataset's dependence mode.
double dataset_reward(const Dataset& data, const RewardParams& theta, const Environment& env);

}  // namespace birl
