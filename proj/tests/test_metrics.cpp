#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "birl/environments.hpp"
#include "birl/metrics.hpp"
#include "support.hpp"

using namespace birl;
using birl::test::kHalfPi;

namespace {

Trajectory scalar(double s) { return Trajectory::from_scalars(std::vector<double>{s}); }

}  // namespace

TEST_CASE("theta error") {
  const auto a = RewardParams::continuous({1.0, 0.0});
  CHECK(theta_error(a, a) == 0.0);
  CHECK(theta_error(a, RewardParams::continuous({0.0, 1.0})) == doctest::Approx(std::sqrt(2.0)));
  CHECK(theta_error(a, RewardParams::continuous({-1.0, 0.0})) == doctest::Approx(2.0));
  CHECK_THROWS_AS(theta_error(a, RewardParams::continuous({0.0, 0.0, 1.0})), ContractViolation);
}

TEST_CASE("belief error") {
  for (double s : {0.0, 0.4, 1.1}) {
    CHECK(belief_error(NormalizerStrategy::exact_quadrature(), scalar(s), Rationality(2.0)) == 0.0);
  }
  CHECK(belief_error(NormalizerStrategy::ignore(), scalar(0.0), Rationality(1.0)) ==
        doctest::Approx(0.919).epsilon(0.005));
  for (int k = 0; k <= 20; ++k) {
    const double s = kHalfPi * k / 20.0;
    // Away from the tie at s = pi/12 (see the human-model tests).
    if (std::abs(6.0 * s - kHalfPi) >= 0.3) {
      CHECK(belief_error(NormalizerStrategy::maximum(), scalar(s), Rationality(20.0)) < 0.01);
    }
    for (const auto& strategy : {NormalizerStrategy::ignore(), NormalizerStrategy::maximum(),
                                 NormalizerStrategy::mean_sampling(10, k)}) {
      for (double beta : {0.0, 0.5, 5.0, 25.0}) {
        const double e = belief_error(strategy, scalar(s), Rationality(beta));
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
      }
    }
  }
}

TEST_CASE("regret") {
  const CupEnv cup;
  const auto up = RewardParams::from_angle(kHalfPi);
  const auto flat = RewardParams::from_angle(0.0);
  CHECK(regret(up, up, cup) == 0.0);
  CHECK(regret(up, flat, cup) == doctest::Approx(kHalfPi).epsilon(1e-8));

  const PathEnv path(PathOptions{.waypoints = 3});
  const auto truth = RewardParams::from_angle(0.5);
  const auto estimate = RewardParams::from_angle(1.1);
  const auto scaled = RewardParams::from_direction({3.0 * estimate[0], 3.0 * estimate[1]});
  CHECK(regret(truth, estimate, path) == doctest::Approx(regret(truth, scaled, path)).epsilon(1e-12));

  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto a = RewardParams::from_angle(kHalfPi * uniform01(rng));
    const auto b = RewardParams::from_angle(kHalfPi * uniform01(rng));
    CHECK(regret(a, b, path) >= 0.0);
    CHECK(theta_error(a, b) <= 2.0);
  }
}

TEST_CASE("evaluation record CSV") {
  EvalRecord r;
  r.environment = "path";
  r.teacher_seed = 7;
  r.method = "double-mh";
  r.learner_mode = Dependence::Dependent;
  r.data_mode = Dependence::Dependent;
  r.beta = 25.0;
  r.theta_true = {0.6, 0.8};
  r.theta_hat = {0.8, 0.6};
  r.error = 0.28284271247461906;
  const auto header = eval_record_header();
  const auto row = to_csv_row(r);
  auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  CHECK(count(header) == count(row));
  CHECK(row.find("0.282842712") != std::string::npos);
  CHECK(header.find("seconds") == std::string::npos);

  r.status = "error: degenerate";
  CHECK_FALSE(r.ok());
  CHECK(to_csv_row(r).find("error: degenerate") != std::string::npos);
}
