#include "birl/teacher.hpp"

#include <cmath>

#include "birl/environments.hpp"
#include "birl/inference.hpp"

namespace birl {

namespace {

// Random-walk MH from `start` targeting exp(beta (R(xi) - w ||xi - anchor||^2)).
// Without an anchor the penalty is dropped.
Trajectory run_teacher_chain(const TeacherSpec& spec, const Environment& env, Trajectory start,
                             const Trajectory* anchor, Rng& rng) {
  const double w = env.correction_penalty();
  auto score = [&](const Trajectory& xi) {
    double s = trajectory_reward(xi, spec.theta, env);
    if (anchor != nullptr) s -= w * squared_distance(xi, *anchor);
    return s;
  };
  Trajectory xi = std::move(start);
  double current = score(xi);
  for (std::size_t i = 0; i < spec.burn_in; ++i) {
    Trajectory candidate = perturb_trajectory(xi, spec.proposal_scale, env, rng);
    const double next = score(candidate);
    if (std::log(uniform01(rng)) < spec.beta.value() * (next - current)) {
      xi = std::move(candidate);
      current = next;
    }
  }
  return xi;
}

}  // namespace

void TeacherSpec::validate(const Environment& env) const {
  if (demonstrations == 0) throw ContractViolation("a teacher provides at least one trajectory");
  if (theta.dimension() != env.feature_dim()) {
    throw ContractViolation("teacher theta dimension does not match the environment");
  }
  if (!(proposal_scale > 0.0)) throw ContractViolation("teacher proposal scale must be positive");
}

TeacherSpec draw_teacher(const Environment& env, double beta, std::size_t demonstrations,
                         Dependence dependence, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  TeacherSpec spec{Prior::continuous_for(env).sample(rng), Rationality(beta), demonstrations,
                   dependence, seed};
  spec.validate(env);
  return spec;
}

Trajectory sample_teacher_trajectory(const TeacherSpec& spec, const Environment& env, Rng& rng) {
  spec.validate(env);
  return run_teacher_chain(spec, env, sample_uniform_trajectory(env, rng), nullptr, rng);
}

Dataset generate_dataset(const TeacherSpec& spec, const Environment& env, Rng& rng) {
  spec.validate(env);
  std::vector<Trajectory> trajectories;
  trajectories.reserve(spec.demonstrations);
  if (spec.dependence == Dependence::Independent) {
    for (std::size_t k = 0; k < spec.demonstrations; ++k) {
      trajectories.push_back(sample_teacher_trajectory(spec, env, rng));
    }
    return Dataset::independent(std::move(trajectories));
  }
  const Trajectory& initial = env.initial_trajectory();
  const Trajectory* previous = &initial;
  for (std::size_t k = 0; k < spec.demonstrations; ++k) {
    trajectories.push_back(run_teacher_chain(spec, env, *previous, previous, rng));
    previous = &trajectories.back();
  }
  return Dataset::dependent(initial, std::move(trajectories));
}

}  // namespace birl
