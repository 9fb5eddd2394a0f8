"""Bayesian reward learning with normalizer approximations and Double MH."""

from ._core import (
    Chain,
    Claim,
    Dataset,
    Environment,
    NormalizerStrategy,
    RewardParams,
    Trajectory,
    belief_error,
    belief_two_hypothesis,
    check_spherical_invariance,
    dataset_reward,
    double_mh_posterior,
    draw_teacher_dataset,
    feature_vector,
    log_likelihood,
    make_environment,
    mh_posterior,
    optimal_trajectory,
    posterior_mean,
    regret,
    run_experiment,
    theta_error,
    trajectory_reward,
    validate_config,
    z_exact,
    z_max,
    z_mean,
)

__all__ = [name for name in dir() if not name.startswith("_")]
