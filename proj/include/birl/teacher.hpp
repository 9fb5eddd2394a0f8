#pragma once

#include <cstddef>
#include <cstdint>

#include "birl/environment.hpp"
#include "birl/human_model.hpp"
#include "birl/random.hpp"

namespace birl {

/// A simulated noisily-rational human.
struct TeacherSpec {
  RewardParams theta;
  Rationality beta;
  std::size_t demonstrations = 3;
  Dependence dependence = Dependence::Independent;
  std::uint64_t seed = 0;
  /// MH steps per generated trajectory. Kept well above the learner's inner
  /// chain length so teacher noise reflects beta rather than sampler error.
  std::size_t burn_in = 2000;
  /// Random-walk step as a fraction of each coordinate's range.
  double proposal_scale = 0.1;

  void validate(const Environment& env) const;
};

/// Teacher with theta uniform over the environment's theta domain, drawn
/// from `seed`.
TeacherSpec draw_teacher(const Environment& env, double beta, std::size_t demonstrations,
                         Dependence dependence, std::uint64_t seed);

/// Approximate draw from P(xi | theta) via a random-walk MH chain started
/// at a uniform trajectory.
Trajectory sample_teacher_trajectory(const TeacherSpec& spec, const Environment& env, Rng& rng);

/// Independent: K i.i.d. teacher trajectories. Dependent: K sequential
/// corrections starting from the environment's initial trajectory, each
/// drawn by MH from exp(beta (R(xi, theta) - w ||xi - xi_prev||^2)).
Dataset generate_dataset(const TeacherSpec& spec, const Environment& env, Rng& rng);

}  // namespace birl
