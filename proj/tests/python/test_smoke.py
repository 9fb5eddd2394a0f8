import math
from pathlib import Path

import pytest

import birl

CONFIGS = Path(__file__).resolve().parents[2] / "configs"
HALF_PI = math.pi / 2


def test_working_example_beliefs():
    exact = birl.belief_two_hypothesis(0.0, 1.0, birl.NormalizerStrategy.exact_quadrature())
    ignore = birl.belief_two_hypothesis(0.0, 1.0, birl.NormalizerStrategy.ignore())
    assert exact == pytest.approx(0.950, abs=0.005)
    assert ignore == pytest.approx(0.031, abs=0.005)
    assert birl.belief_error(birl.NormalizerStrategy.ignore(), 0.0, 1.0) == pytest.approx(0.919, abs=0.005)


def test_normalizers_on_the_cup():
    cup = birl.make_environment("cup")
    flat = birl.RewardParams.from_angle(0.0)
    z0 = math.exp(-5) * (1 - math.exp(-5 * HALF_PI)) / 5
    assert birl.z_exact(flat, 1.0, cup) == pytest.approx(math.log(z0), rel=1e-6)
    assert birl.z_max(flat, 1.0, cup) == pytest.approx(-5.0)
    assert birl.z_mean(flat, 0.0, cup, samples=10, seed=1) == 0.0
    xi = birl.Trajectory.from_scalars([0.0])
    assert birl.log_likelihood(xi, flat, 1.0, birl.NormalizerStrategy.exact_quadrature(), cup) == pytest.approx(1.610, abs=1e-3)


def test_path_features_and_regret():
    path = birl.make_environment("path", {"waypoints": "2"})
    assert path.feature_dim == 2
    theta = birl.RewardParams.from_angle(0.7)
    xi = birl.optimal_trajectory(theta, path)
    phi = birl.feature_vector(xi, path)
    assert birl.trajectory_reward(xi, theta, path) == pytest.approx(sum(a * b for a, b in zip(theta.values, phi)))
    assert birl.regret(theta, theta, path) == 0.0


def test_chains_are_seeded_and_unit_norm():
    path = birl.make_environment("path", {"waypoints": "1"})
    truth, data = birl.draw_teacher_dataset(path, 25.0, demonstrations=3, seed=4)
    assert len(data) == 3
    a = birl.mh_posterior(data, 25.0, birl.NormalizerStrategy.exact_quadrature(), path, iterations=600, burn_in=100, seed=2)
    b = birl.mh_posterior(data, 25.0, birl.NormalizerStrategy.exact_quadrature(), path, iterations=600, burn_in=100, seed=2)
    assert a.samples == b.samples
    assert len(a.samples) == 500
    assert all(abs(math.hypot(*s) - 1) < 1e-9 for s in a.samples)
    dmh = birl.double_mh_posterior(data, 25.0, path, iterations=600, burn_in=100, seed=2, inner_iterations=50)
    estimate = birl.posterior_mean(dmh)
    assert 0.0 <= birl.theta_error(truth, estimate) <= 2.0
    assert dmh.to_csv().startswith("seed,iteration")


def test_dependent_teacher_and_learner():
    path = birl.make_environment("path", {"waypoints": "1"})
    _, data = birl.draw_teacher_dataset(path, 25.0, dependent=True, seed=9)
    assert data.dependent_mode
    chain = birl.mh_posterior(data, 25.0, birl.NormalizerStrategy.maximum(), path, iterations=300, burn_in=50)
    assert 0.0 < chain.acceptance_rate < 1.0


def test_config_validation_and_errors():
    birl.validate_config(CONFIGS / "simulation_suite.conf")
    with pytest.raises(ValueError):
        birl.make_environment("push")
    with pytest.raises(ValueError):
        birl.RewardParams.from_direction([0.0, 0.0])


def test_run_crossover(tmp_path):
    files, claims = birl.run_experiment("crossover", CONFIGS / "crossover.conf", out=tmp_path)
    assert [f.name for f in files] == ["crossover.csv"]
    header = files[0].read_text().splitlines()[0]
    assert header == "sweep,strategy,beta,samples,demo,mean_belief_error,std_error"
    assert claims and all(c.passed for c in claims)
