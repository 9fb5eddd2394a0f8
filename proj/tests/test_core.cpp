#include <doctest.h>

#include <cmath>
#include <random>

#include "birl/environments.hpp"
#include "support.hpp"

using namespace birl;
using birl::test::kHalfPi;
using birl::test::LinearEnv;

namespace {

Trajectory scalar(double s) { return Trajectory::from_scalars(std::vector<double>{s}); }

}  // namespace

TEST_CASE("state reward in the cup example") {
  const CupEnv cup;
  const double s = 0.0;
  CHECK(state_reward(State(&s, 1), RewardParams::from_angle(0.0), cup) == doctest::Approx(-5.0));
  CHECK(trajectory_reward(scalar(kHalfPi), RewardParams::from_angle(kHalfPi), cup) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("state reward with zero and orthogonal features") {
  const LinearEnv zero({0.0, 0.0}, {0.0, 0.0});
  const LinearEnv first({1.0, 0.0}, {0.0, 0.0});
  const double s = 0.4;
  CHECK(state_reward(State(&s, 1), RewardParams::from_angle(0.7), zero) == 0.0);
  CHECK(state_reward(State(&s, 1), RewardParams::continuous({0.0, 1.0}), first) == 0.0);
}

TEST_CASE("trajectory reward reduces to the state reward for one state") {
  const CupEnv cup;
  const double s = 0.3;
  const auto theta = RewardParams::from_angle(0.9);
  CHECK(trajectory_reward(scalar(s), theta, cup) == state_reward(State(&s, 1), theta, cup));
}

TEST_CASE("feature vector sums per-state features") {
  const LinearEnv one({0.3, 0.7}, {0.0, 0.0});
  const auto phi = feature_vector(scalar(0.5), one);
  CHECK(phi[0] == doctest::Approx(0.3));
  CHECK(phi[1] == doctest::Approx(0.7));

  const LinearEnv two({0.1, -0.2}, {0.5, 1.5}, 2);
  const auto single = feature_vector(scalar(0.25), LinearEnv({0.1, -0.2}, {0.5, 1.5}));
  const auto doubled = feature_vector(Trajectory(1, {0.25, 0.25}), two);
  CHECK(doubled[0] == doctest::Approx(2.0 * single[0]));
  CHECK(doubled[1] == doctest::Approx(2.0 * single[1]));
}

TEST_CASE("linearity: reward equals theta dot features") {
  std::mt19937_64 rng(11);
  const PathEnv path(PathOptions{.waypoints = 5, .with_height = true});
  const CupEnv cup;
  const SphereEnv sphere;
  const Environment* envs[] = {&path, &cup, &sphere};
  for (const auto* env : envs) {
    for (int i = 0; i < 200; ++i) {
      const auto xi = sample_uniform_trajectory(*env, rng);
      const auto theta = RewardParams::from_direction(
          {std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng)});
      CHECK(std::abs(trajectory_reward(xi, theta, *env) -
                     dot(theta.values(), feature_vector(xi, *env))) < 1e-12);
    }
  }
}

TEST_CASE("additivity over concatenated state lists") {
  const LinearEnv two({0.1, -0.2}, {0.5, 1.5}, 2);
  const LinearEnv one({0.1, -0.2}, {0.5, 1.5}, 1);
  const auto theta = RewardParams::from_angle(0.4);
  const double whole = trajectory_reward(Trajectory(1, {0.2, 0.9}), theta, two);
  const double parts = trajectory_reward(scalar(0.2), theta, one) +
                       trajectory_reward(scalar(0.9), theta, one);
  CHECK(std::abs(whole - parts) < 1e-12);
}

TEST_CASE("independent dataset reward") {
  const CupEnv cup;
  const auto theta = RewardParams::from_angle(0.3);
  const auto xi = scalar(0.8);
  const double single = trajectory_reward(xi, theta, cup);
  CHECK(dataset_reward_independent(Dataset::independent({xi}), theta, cup) == single);
  CHECK(dataset_reward_independent(Dataset::independent({xi, xi, xi}), theta, cup) ==
        doctest::Approx(3.0 * single));
  const auto pair = Dataset::independent({scalar(0.0), scalar(kHalfPi)});
  CHECK(dataset_reward_independent(pair, RewardParams::from_angle(0.0), cup) ==
        doctest::Approx(-17.854).epsilon(1e-4));
}

TEST_CASE("independent dataset reward is permutation invariant") {
  const PathEnv path;
  std::mt19937_64 rng(3);
  std::vector<Trajectory> xs;
  for (int i = 0; i < 4; ++i) xs.push_back(sample_uniform_trajectory(path, rng));
  const auto theta = RewardParams::from_angle(0.6);
  const double forward = dataset_reward_independent(Dataset::independent(xs), theta, path);
  std::reverse(xs.begin(), xs.end());
  std::swap(xs[0], xs[2]);
  CHECK(dataset_reward_independent(Dataset::independent(xs), theta, path) ==
        doctest::Approx(forward).epsilon(1e-14));
}

TEST_CASE("dependent dataset reward") {
  const PathEnv path(PathOptions{.waypoints = 3});
  const auto theta = RewardParams::from_angle(0.8);
  const Trajectory a(1, {0.1, 0.2, 0.3});
  const Trajectory b(1, {0.4, 0.2, 0.5});

  SUBCASE("identical consecutive trajectories cost nothing") {
    const auto data = Dataset::dependent(b, {b});
    CHECK(dataset_reward_dependent(data, theta, path) ==
          doctest::Approx(trajectory_reward(b, theta, path)));
  }

  SUBCASE("doubling displacements quadruples the penalty") {
    const Trajectory far(1, {0.7, 0.2, 0.7});
    const double p1 = dependent_penalty(Dataset::dependent(a, {b}), path);
    const double p2 = dependent_penalty(Dataset::dependent(a, {far}), path);
    CHECK(p2 == doctest::Approx(4.0 * p1));
  }

  SUBCASE("matches the hand-expanded sum") {
    const Trajectory c(1, {0.9, 0.0, 0.6});
    const auto data = Dataset::dependent(a, {b, c});
    const double w = path.correction_penalty();
    const double expected = trajectory_reward(b, theta, path) - w * squared_distance(b, a) +
                            trajectory_reward(c, theta, path) - w * squared_distance(c, b);
    CHECK(std::abs(dataset_reward_dependent(data, theta, path) - expected) < 1e-12);
    CHECK(dataset_reward(data, theta, path) == dataset_reward_dependent(data, theta, path));
  }

  SUBCASE("order matters") {
    const Trajectory c(1, {0.9, 0.0, 0.6});
    const double abc = dataset_reward_dependent(Dataset::dependent(a, {b, c}), theta, path);
    const double acb = dataset_reward_dependent(Dataset::dependent(a, {c, b}), theta, path);
    CHECK(std::abs(abc - acb) > 1e-6);
  }
}

TEST_CASE("contract violations") {
  const CupEnv cup;
  const auto theta = RewardParams::from_angle(0.2);
  CHECK_THROWS_AS(trajectory_reward(Trajectory(), theta, cup), ContractViolation);
  CHECK_THROWS_AS(trajectory_reward(scalar(0.1), RewardParams::continuous({1.0, 0.0, 0.0}), cup),
                  ContractViolation);
  CHECK_THROWS_AS(dataset_reward_independent(Dataset::dependent(scalar(0.1), {scalar(0.2)}),
                                             theta, cup),
                  ContractViolation);
  CHECK_THROWS_AS(dataset_reward_dependent(Dataset::independent({scalar(0.2)}), theta, cup),
                  ContractViolation);
  CHECK_THROWS_AS(Dataset::dependent(Trajectory(1, {0.1, 0.2, 0.3}), {Trajectory(1, {0.1, 0.2})}),
                  ContractViolation);
  CHECK_THROWS_AS(RewardParams::continuous({0.5, 0.5}), ContractViolation);
  CHECK_THROWS_AS(RewardParams::from_direction({0.0, 0.0}), ContractViolation);
  CHECK_THROWS_AS(cup.validate(scalar(2.0)), ContractViolation);
}

TEST_CASE("unit norm of constructed reward parameters") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  for (int i = 0; i < 1000; ++i) {
    const auto theta = RewardParams::from_direction({n(rng), n(rng), n(rng)});
    CHECK(std::abs(norm(theta.values()) - 1.0) < 1e-9);
  }
}
