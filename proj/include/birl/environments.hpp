#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>

#include "birl/environment.hpp"
#include "birl/random.hpp"

namespace birl {

/// Cup-carrying working example. The human shows one cup angle s in
/// [0, pi/2]; phi(s) = (-5 (s + 1), -(pi/2 - s)) so that theta = (cos a, sin a)
/// reproduces r(s, a) = -5 cos(a) (s + 1) - sin(a) (pi/2 - s). The two
/// discrete hypotheses are a = 0 (horizontal) and a = pi/2 (vertical).
class CupEnv final : public Environment {
 public:
  explicit CupEnv(std::size_t grid_resolution = 10000);

  /// Closed-form reward with theta given as an angle.
  static double reward(double s, double angle);

  std::vector<Vector> hypotheses() const override;
  void state_features(State s, std::span<double> out) const override;
  bool coordinate_separable() const override { return true; }
  void coordinate_features(std::size_t coord, double x, std::span<double> out) const override;
};

struct PathOptions {
  std::size_t waypoints = 5;
  /// Adds a height coordinate; lifting adds to the travel feature.
  bool with_height = false;
  /// Push distance of every waypoint in the robot's initial trajectory.
  double initial_position = 0.0;
  /// Height of every waypoint in the initial trajectory (with_height only).
  double initial_height = 1.0;
  double correction_penalty = 1.0;
  std::size_t grid_resolution = 2000;
};

/// Analytic push-style path. Each waypoint carries a push distance x in
/// [0, 1] (and optionally a height h in [0, 1]). Both per-trajectory features
/// lie in [-1, 0]:
///   travel = -(1/T) sum (1 + x) / 2        (approach plus push effort)
///   goal   = -(1/T) sum (1 - x)^2          (box still away from its goal)
/// With a height coordinate travel becomes -(1/T) sum (1 + x + h) / 3, so
/// lifting only costs effort and the feature dimension stays 2. Travel and
/// goal trade off, so the optimal push depends on the ratio of the weights.
class PathEnv final : public Environment {
 public:
  explicit PathEnv(PathOptions options = {});

  const PathOptions& options() const { return options_; }

  void state_features(State s, std::span<double> out) const override;
  bool coordinate_separable() const override { return true; }
  void coordinate_features(std::size_t coord, double x, std::span<double> out) const override;

 private:
  PathOptions options_;
};

/// Feature image is the circle of radius sigma: a trajectory is an angle
/// t in [0, 2 pi) with Phi = sigma (cos t, sin t). Z(theta) is constant here.
class SphereEnv final : public Environment {
 public:
  explicit SphereEnv(double radius = 1.0, std::size_t grid_resolution = 10000);

  double radius() const { return radius_; }

  void state_features(State s, std::span<double> out) const override;
  bool coordinate_separable() const override { return true; }
  void coordinate_features(std::size_t coord, double x, std::span<double> out) const override;

 private:
  double radius_;
};

using EnvironmentPtr = std::shared_ptr<const Environment>;

/// Builds "cup", "path" or "sphere" from string parameters (as read from an
/// experiment config). Unknown names or keys raise ConfigError.
EnvironmentPtr make_environment(const std::string& name,
                                const std::map<std::string, std::string>& params = {});

/// Folds x into [lower, upper] by reflection, or wraps it for periodic
/// coordinates. Reflection keeps Gaussian random-walk proposals symmetric.
double fold_into_bounds(double x, const Bounds& bounds, std::size_t coord);

/// Every coordinate of every waypoint i.i.d. uniform over the state box.
Trajectory sample_uniform_trajectory(const Environment& env, Rng& rng);

/// Gaussian noise per coordinate with std = scale * (coordinate range),
/// reflected back into the box.
Trajectory perturb_trajectory(const Trajectory& xi, double scale, const Environment& env, Rng& rng);

/// K trajectories, each the initial trajectory with i.i.d. uniform waypoint
/// perturbations of the given half-width (fraction of coordinate range),
/// restricted to the box.
Dataset sample_dependent_dataset(const Environment& env, const Trajectory& initial, std::size_t K,
                                 double half_width, Rng& rng);

/// argmax over the state box of theta . phi(s): grid search followed by
/// golden-section refinement to 1e-8 in the argument. Ties on the grid go to
/// the lowest index.
Vector optimal_state(const RewardParams& theta, const Environment& env);

/// argmax_xi R(xi, theta). Features are time-invariant, so every waypoint
/// sits at optimal_state.
Trajectory optimal_trajectory(const RewardParams& theta, const Environment& env);

}  // namespace birl
