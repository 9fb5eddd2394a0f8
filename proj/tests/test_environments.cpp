#include <doctest.h>

#include <cmath>
#include <random>

#include "birl/environments.hpp"
#include "birl/human_model.hpp"
#include "birl/numeric.hpp"
#include "support.hpp"

using namespace birl;
using birl::test::kHalfPi;
using birl::test::ks_critical;
using birl::test::ks_statistic;
using birl::test::LinearEnv;

namespace {

bool valid(const Environment& env, const Trajectory& xi) {
  try {
    env.validate(xi);
    return true;
  } catch (const ContractViolation&) {
    return false;
  }
}

/// log of the grid mean of exp(beta R(D, theta)) for one correction of a
/// two-waypoint path, brute force over the 2-D box around the initial
/// trajectory.
double grid_log_mean(const PathEnv& env, const RewardParams& theta, double beta, double half_width,
                     std::size_t n) {
  const auto& x0 = env.initial_trajectory();
  const double lo0 = std::max(0.0, x0.flat()[0] - half_width);
  const double hi0 = std::min(1.0, x0.flat()[0] + half_width);
  const double lo1 = std::max(0.0, x0.flat()[1] - half_width);
  const double hi1 = std::min(1.0, x0.flat()[1] + half_width);
  std::vector<double> terms;
  terms.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = lo0 + (hi0 - lo0) * (i + 0.5) / n;
      const double b = lo1 + (hi1 - lo1) * (j + 0.5) / n;
      const auto d = Dataset::dependent(x0, {Trajectory(1, {a, b})});
      terms.push_back(beta * dataset_reward_dependent(d, theta, env));
    }
  }
  return log_mean_exp(terms);
}

}  // namespace

TEST_CASE("uniform trajectories on the cup are uniform") {
  const CupEnv cup;
  Rng rng(101);
  std::vector<double> xs;
  for (int i = 0; i < 100000; ++i) xs.push_back(sample_uniform_trajectory(cup, rng).flat()[0]);
  const double d = ks_statistic(xs, [](double s) { return s / kHalfPi; });
  CHECK(d < ks_critical(100000.0));
}

TEST_CASE("uniform trajectories stay in bounds") {
  const PathEnv path(PathOptions{.waypoints = 5, .with_height = true});
  const SphereEnv sphere;
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    CHECK(valid(path, sample_uniform_trajectory(path, rng)));
    const auto t = sample_uniform_trajectory(sphere, rng).flat()[0];
    CHECK(t >= 0.0);
    CHECK(t < 2.0 * M_PI);
  }
}

TEST_CASE("zero-width box degenerates to one trajectory") {
  const LinearEnv point({0.0, 1.0}, {1.0, 0.0}, 3, 0.25, 0.25);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    CHECK(sample_uniform_trajectory(point, rng) == Trajectory(1, {0.25, 0.25, 0.25}));
  }
}

TEST_CASE("perturbation") {
  const PathEnv path(PathOptions{.waypoints = 4});
  Rng rng(77);
  const Trajectory xi(1, {0.0, 0.3, 0.5, 1.0});

  SUBCASE("scale zero leaves the trajectory unchanged") {
    CHECK(perturb_trajectory(xi, 0.0, path, rng) == xi);
  }
  SUBCASE("outputs stay in bounds") {
    for (int i = 0; i < 5000; ++i) CHECK(valid(path, perturb_trajectory(xi, 0.5, path, rng)));
  }
  SUBCASE("mean displacement vanishes away from the walls") {
    const Trajectory mid(1, {0.5});
    const PathEnv one(PathOptions{.waypoints = 1});
    const double scale = 0.05;
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += perturb_trajectory(mid, scale, one, rng).flat()[0] - 0.5;
    CHECK(std::abs(sum / n) < 3.0 * scale / std::sqrt(static_cast<double>(n)));
  }
  SUBCASE("periodic coordinates wrap") {
    const SphereEnv sphere;
    const Trajectory edge = Trajectory::from_scalars(std::vector<double>{0.01});
    for (int i = 0; i < 2000; ++i) {
      const double t = perturb_trajectory(edge, 0.2, sphere, rng).flat()[0];
      CHECK(t >= 0.0);
      CHECK(t < 2.0 * M_PI);
    }
  }
}

TEST_CASE("dependent dataset sampler") {
  const PathEnv path(PathOptions{.waypoints = 3, .initial_position = 0.9});
  const auto& x0 = path.initial_trajectory();
  Rng rng(9);

  SUBCASE("half-width zero copies the initial trajectory") {
    const auto d = sample_dependent_dataset(path, x0, 4, 0.0, rng);
    CHECK(d.size() == 4);
    CHECK(d.dependence() == Dependence::Dependent);
    CHECK(d.initial() == x0);
    for (const auto& xi : d.trajectories()) CHECK(xi == x0);
  }
  SUBCASE("waypoints stay inside the band and the box") {
    for (int r = 0; r < 500; ++r) {
      const auto d = sample_dependent_dataset(path, x0, 3, 0.2, rng);
      for (const auto& xi : d.trajectories()) {
        for (double x : xi.flat()) {
          CHECK(x >= 0.7 - 1e-12);
          CHECK(x <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("dataset-space normalizers match a grid over the dataset space") {
  const PathEnv env(PathOptions{.waypoints = 2, .initial_position = 0.5});
  const double hw = 0.3;
  const double beta = 5.0;
  DatasetSpace space{env.initial_trajectory(), 1, hw};
  const std::vector<double> angles{0.1, 0.6, 1.0, 1.5};
  std::vector<double> oracle, sampled, exact;
  for (double a : angles) {
    const auto theta = RewardParams::from_angle(a);
    oracle.push_back(grid_log_mean(env, theta, beta, hw, 400));
    sampled.push_back(z_mean_dataset(theta, Rationality(beta), env, space, 10000, Rng(2024)).value);
    exact.push_back(z_exact_dataset(theta, Rationality(beta), env, space).value);
  }
  for (std::size_t i = 1; i < angles.size(); ++i) {
    CHECK(std::abs((sampled[i] - sampled[0]) - (oracle[i] - oracle[0])) < 0.05);
    CHECK(std::abs((exact[i] - exact[0]) - (oracle[i] - oracle[0])) < 1e-3);
  }
}

TEST_CASE("optimal trajectories") {
  const CupEnv cup;
  CHECK(optimal_trajectory(RewardParams::from_angle(kHalfPi), cup).flat()[0] ==
        doctest::Approx(kHalfPi).epsilon(1e-8));
  CHECK(optimal_trajectory(RewardParams::from_angle(0.0), cup).flat()[0] ==
        doctest::Approx(0.0).epsilon(1e-8));
  const SphereEnv sphere;
  const double t = optimal_trajectory(RewardParams::continuous({1.0, 0.0}), sphere).flat()[0];
  CHECK(std::min(t, 2.0 * M_PI - t) < 1e-6);
}

TEST_CASE("optimal trajectory beats random trajectories") {
  const PathEnv path(PathOptions{.waypoints = 3, .with_height = true});
  const SphereEnv sphere;
  const CupEnv cup;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    for (const Environment* env : {static_cast<const Environment*>(&path),
                                   static_cast<const Environment*>(&sphere),
                                   static_cast<const Environment*>(&cup)}) {
      const auto theta = RewardParams::from_angle(2.0 * M_PI * uniform01(rng));
      const double best = trajectory_reward(optimal_trajectory(theta, *env), theta, *env);
      double random_best = -1e300;
      for (int i = 0; i < 10000; ++i) {
        random_best = std::max(random_best,
                               trajectory_reward(sample_uniform_trajectory(*env, rng), theta, *env));
      }
      CHECK(best >= random_best - 1e-12);
    }
  }
}

TEST_CASE("sphere features have constant norm") {
  const SphereEnv sphere(1.7);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto phi = feature_vector(sample_uniform_trajectory(sphere, rng), sphere);
    CHECK(norm(phi) == doctest::Approx(1.7).epsilon(1e-12));
  }
}

TEST_CASE("path features lie in [-1, 0]") {
  Rng rng(4);
  for (bool height : {false, true}) {
    const PathEnv path(PathOptions{.waypoints = 4, .with_height = height});
    CHECK(path.feature_dim() == 2);
    for (int i = 0; i < 1000; ++i) {
      for (double f : feature_vector(sample_uniform_trajectory(path, rng), path)) {
        CHECK(f >= -1.0);
        CHECK(f <= 0.0);
      }
    }
  }
}

TEST_CASE("environment factory") {
  CHECK(make_environment("cup")->name() == "cup");
  CHECK(make_environment("sphere")->name() == "sphere");
  const auto path = make_environment("path", {{"waypoints", "2"}, {"height", "true"}});
  CHECK(path->horizon() == 2);
  CHECK(path->state_dim() == 2);
  CHECK_THROWS_AS(make_environment("push"), ConfigError);
  CHECK_THROWS_AS(make_environment("path", {{"colour", "red"}}), ConfigError);
  CHECK_THROWS_AS(make_environment("path", {{"initial", "2"}}), ConfigError);
}
