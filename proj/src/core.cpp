#include "birl/core.hpp"

#include <cmath>
#include <numeric>

namespace birl {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractViolation("dot: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

RewardParams RewardParams::continuous(Vector theta) {
  if (theta.empty()) throw ContractViolation("reward parameters must have dimension >= 1");
  const double n = norm(theta);
  if (!(std::abs(n - 1.0) <= kUnitTolerance)) {
    throw ContractViolation("continuous reward parameters must be a unit vector (norm " +
                            std::to_string(n) + ")");
  }
  return RewardParams(std::move(theta), std::nullopt);
}

RewardParams RewardParams::from_direction(Vector direction) {
  if (direction.empty()) throw ContractViolation("reward parameters must have dimension >= 1");
  const double n = norm(direction);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ContractViolation("cannot normalize a zero or non-finite direction");
  }
  for (double& x : direction) x /= n;
  return RewardParams(std::move(direction), std::nullopt);
}

RewardParams RewardParams::from_angle(double angle) {
  return RewardParams({std::cos(angle), std::sin(angle)}, std::nullopt);
}

RewardParams RewardParams::discrete(std::size_t index, std::span<const Vector> hypotheses) {
  if (index >= hypotheses.size()) {
    throw ContractViolation("hypothesis index " + std::to_string(index) +
                            " out of range for " + std::to_string(hypotheses.size()) +
                            " hypotheses");
  }
  auto checked = continuous(hypotheses[index]);
  return RewardParams(std::move(checked.values_), index);
}

std::size_t RewardParams::index() const {
  if (!index_) throw ContractViolation("continuous reward parameters have no hypothesis index");
  return *index_;
}

Trajectory::Trajectory(std::size_t state_dim, Vector flat)
    : state_dim_(state_dim), flat_(std::move(flat)) {
  if (state_dim_ == 0) throw ContractViolation("state dimension must be positive");
  if (flat_.size() % state_dim_ != 0) {
    throw ContractViolation("trajectory storage is not a whole number of states");
  }
}

Trajectory Trajectory::from_scalars(std::span<const double> values) {
  return Trajectory(1, Vector(values.begin(), values.end()));
}

double squared_distance(const Trajectory& a, const Trajectory& b) {
  if (a.length() != b.length() || a.state_dim() != b.state_dim()) {
    throw ContractViolation("trajectory distance needs equal lengths and state dimensions");
  }
  double total = 0.0;
  const auto fa = a.flat();
  const auto fb = b.flat();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const double d = fa[i] - fb[i];
    total += d * d;
  }
  return total;
}

std::string to_string(Dependence mode) {
  return mode == Dependence::Independent ? "independent" : "dependent";
}

Dataset::Dataset(std::vector<Trajectory> trajectories, Dependence dependence,
                 std::optional<Trajectory> initial)
    : trajectories_(std::move(trajectories)), dependence_(dependence), initial_(std::move(initial)) {
  if (trajectories_.empty()) throw ContractViolation("a dataset needs at least one trajectory");
  const auto& first = trajectories_.front();
  for (const auto& xi : trajectories_) {
    if (xi.empty()) throw ContractViolation("dataset trajectories must be nonempty");
    if (xi.state_dim() != first.state_dim()) {
      throw ContractViolation("dataset trajectories must share one state dimension");
    }
  }
}

Dataset Dataset::independent(std::vector<Trajectory> trajectories) {
  return Dataset(std::move(trajectories), Dependence::Independent, std::nullopt);
}

Dataset Dataset::dependent(Trajectory initial, std::vector<Trajectory> corrections) {
  for (const auto& xi : corrections) {
    if (xi.length() != initial.length() || xi.state_dim() != initial.state_dim()) {
      throw ContractViolation(
          "dependent corrections must match the initial trajectory's length and state dimension");
    }
  }
  return Dataset(std::move(corrections), Dependence::Dependent, std::move(initial));
}

const Trajectory& Dataset::initial() const {
  if (!initial_) throw ContractViolation("independent datasets have no initial trajectory");
  return *initial_;
}

}  // namespace birl
