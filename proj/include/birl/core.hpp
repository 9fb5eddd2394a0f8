#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace birl {

using Vector = std::vector<double>;

/// Read-only view of one state's coordinates inside a trajectory.
using State = std::span<const double>;

/// Cumulative features Phi(xi) of a trajectory, length d.
using FeatureVector = Vector;

/// A caller broke a documented precondition (dimension mismatch, wrong
/// dataset mode, empty input).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration: bad grid resolution, unknown names, bad values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

/// Reward parameters theta. Continuous parameters are unit vectors in R^d.
/// Discrete parameters carry an index into a finite hypothesis list together
/// with the (unit) vector that hypothesis stands for, so rewards are always
/// evaluated through the same linear form.
class RewardParams {
 public:
  static constexpr double kUnitTolerance = 1e-9;

  /// Throws ContractViolation unless |theta| = 1 within kUnitTolerance.
  static RewardParams continuous(Vector theta);
  /// Normalizes `direction`; throws on a zero vector.
  static RewardParams from_direction(Vector direction);
  /// (cos a, sin a).
  static RewardParams from_angle(double angle);
  static RewardParams discrete(std::size_t index, std::span<const Vector> hypotheses);

  bool is_discrete() const { return index_.has_value(); }
  std::size_t index() const;
  std::size_t dimension() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool operator==(const RewardParams&) const = default;

 private:
  RewardParams(Vector values, std::optional<std::size_t> index)
      : values_(std::move(values)), index_(index) {}

  Vector values_;
  std::optional<std::size_t> index_;
};

/// Fixed-length sequence of states stored row-major (length x state_dim).
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::size_t state_dim, Vector flat);
  /// Single-coordinate states, one per entry.
  static Trajectory from_scalars(std::span<const double> values);

  std::size_t length() const { return state_dim_ == 0 ? 0 : flat_.size() / state_dim_; }
  std::size_t state_dim() const { return state_dim_; }
  bool empty() const { return flat_.empty(); }

  State state(std::size_t t) const {
    return State(flat_).subspan(t * state_dim_, state_dim_);
  }
  std::span<const double> flat() const { return flat_; }
  std::span<double> flat_mutable() { return flat_; }

  bool operator==(const Trajectory&) const = default;

 private:
  std::size_t state_dim_ = 0;
  Vector flat_;
};

/// Squared Euclidean distance between flattened state sequences.
double squared_distance(const Trajectory& a, const Trajectory& b);

enum class Dependence { Independent, Dependent };

std::string to_string(Dependence mode);

/// K human trajectories. Dependent datasets also record the robot's initial
/// trajectory that the first correction starts from.
class Dataset {
 public:
  static Dataset independent(std::vector<Trajectory> trajectories);
  static Dataset dependent(Trajectory initial, std::vector<Trajectory> corrections);

  std::size_t size() const { return trajectories_.size(); }
  const std::vector<Trajectory>& trajectories() const { return trajectories_; }
  std::vector<Trajectory>& trajectories_mutable() { return trajectories_; }
  const Trajectory& operator[](std::size_t i) const { return trajectories_[i]; }
  Dependence dependence() const { return dependence_; }
  /// Robot's initial trajectory; throws for independent datasets.
  const Trajectory& initial() const;

 private:
  Dataset(std::vector<Trajectory> trajectories, Dependence dependence,
          std::optional<Trajectory> initial);

  std::vector<Trajectory> trajectories_;
  Dependence dependence_;
  std::optional<Trajectory> initial_;
};

}  // namespace birl
