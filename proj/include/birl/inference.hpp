#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "birl/environment.hpp"
#include "birl/human_model.hpp"
#include "birl/random.hpp"

namespace birl {

/// No finite log-posterior was found for the initial theta.
class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The posterior mean vanished (e.g. antipodal samples).
class DegenerateEstimate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prior over reward parameters: uniform on the unit sphere, on its
/// positive orthant, or over a finite hypothesis list.
class Prior {
 public:
  static Prior uniform_sphere(std::size_t dim);
  static Prior positive_orthant(std::size_t dim);
  static Prior discrete(std::vector<Vector> hypotheses);
  /// The prior an environment implies: its hypothesis list when it has one,
  /// otherwise its theta domain.
  static Prior for_environment(const Environment& env);
  /// Continuous prior over the environment's theta domain, ignoring any
  /// hypothesis list.
  static Prior continuous_for(const Environment& env);

  std::size_t dimension() const { return dim_; }
  bool is_discrete() const { return !hypotheses_.empty(); }
  const std::vector<Vector>& hypotheses() const { return hypotheses_; }

  /// Log density up to a constant: 0 on the support, -inf outside.
  double log_density(const RewardParams& theta) const;
  RewardParams sample(Rng& rng) const;
  /// Symmetric proposal: tangent random walk for continuous priors, a
  /// uniformly chosen other hypothesis for discrete ones.
  RewardParams propose(const RewardParams& theta, double scale, Rng& rng) const;

 private:
  enum class Support { Sphere, PositiveOrthant, Finite };
  Prior(Support support, std::size_t dim, std::vector<Vector> hypotheses)
      : support_(support), dim_(dim), hypotheses_(std::move(hypotheses)) {}

  Support support_;
  std::size_t dim_;
  std::vector<Vector> hypotheses_;
};

struct MhConfig {
  std::size_t iterations = 5000;
  std::size_t burn_in = 1000;
  std::size_t thinning = 1;
  /// Std of the tangent step on the unit sphere.
  double proposal_scale = 0.15;
  std::uint64_t seed = 0;

  void validate() const;
  /// floor((iterations - burn_in) / thinning).
  std::size_t kept_samples() const { return (iterations - burn_in) / thinning; }
};

struct InnerConfig {
  std::size_t iterations = 500;
  /// Per-coordinate step std as a fraction of the coordinate's range.
  double proposal_scale = 0.1;

  void validate() const;
  /// Inner chains for outer iteration i are seeded with
  /// derive_seed(outer_seed, i).
  static std::uint64_t seed_for(std::uint64_t outer_seed, std::size_t iteration) {
    return derive_seed(outer_seed, iteration);
  }
};

/// Output of one sampler run. Samples are kept after burn-in and thinning;
/// the per-sample fields line up with `samples`.
struct Chain {
  std::vector<RewardParams> samples;
  std::vector<std::size_t> sample_iterations;
  std::vector<bool> sample_accepted;
  std::vector<double> log_ratio_trace;
  std::size_t accepted = 0;
  std::size_t proposals = 0;
  MhConfig config;
  double seconds = 0.0;

  double acceptance_rate() const {
    return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

/// One row per kept sample: seed, iteration, theta_0..theta_{d-1}, accepted.
void write_chain_csv(const Chain& chain, std::ostream& out);

/// theta + scale * (Gaussian tangent step), renormalized. scale = 0 returns
/// theta unchanged.
RewardParams propose_theta(const RewardParams& theta, double scale, Rng& rng);

/// log of the Metropolis ratio for independent data, with Z from `normalizer`:
/// beta (sum R(xi_i, theta') - sum R(xi_i, theta)) - K (log Z(theta') - log Z(theta))
/// + log P(theta') - log P(theta).
double acceptance_ratio_independent(const RewardParams& theta, const RewardParams& proposal,
                                    const Dataset& data, Rationality beta,
                                    const Normalizer& normalizer, const Environment& env,
                                    const Prior& prior);
double acceptance_ratio_independent(const RewardParams& theta, const RewardParams& proposal,
                                    const Dataset& data, Rationality beta,
                                    const NormalizerStrategy& strategy, const Environment& env,
                                    const Prior& prior);

/// Dependent-data version: beta (R(D, theta') - R(D, theta)) with the
/// dataset-space normalizer.
double acceptance_ratio_dependent(const RewardParams& theta, const RewardParams& proposal,
                                  const Dataset& data, Rationality beta,
                                  const Normalizer& normalizer, const Environment& env,
                                  const Prior& prior);

/// The dataset space a dependent learner normalizes over: same initial
/// trajectory and number of corrections as `data`.
DatasetSpace dataset_space_for(const Dataset& data, double half_width);

/// Metropolis-Hastings over theta with a pluggable normalizer. Independent
/// or dependent handling follows the dataset's mode; `normalizer` must match
/// (trajectory space vs dataset space).
Chain mh_posterior(const Dataset& data, Rationality beta, const Normalizer& normalizer,
                   const Environment& env, const MhConfig& config, const Prior& prior);

/// Auxiliary trajectory for the exchange step: starts from a uniformly chosen
/// element of `data` and runs `config.iterations` random-walk MH steps
/// targeting P(xi | theta).
Trajectory inner_sampler(const Dataset& data, const RewardParams& theta, Rationality beta,
                         const Environment& env, const InnerConfig& config, Rng& rng);

/// Dependent counterpart: random-walk MH over datasets starting at `data`,
/// targeting exp(beta R(D', theta)) with the dependent dataset reward.
Dataset inner_sampler_dependent(const Dataset& data, const RewardParams& theta, Rationality beta,
                                const Environment& env, const InnerConfig& config, Rng& rng);

/// Exchange acceptance (log):
/// beta sum_i (R(xi_i, theta') - R(xi_i, theta)) + beta K (R(xi', theta) - R(xi', theta'))
/// + log P(theta') - log P(theta). Evaluates no normalizer.
double double_mh_acceptance(const RewardParams& theta, const RewardParams& proposal,
                            const Trajectory& auxiliary, const Dataset& data, Rationality beta,
                            const Environment& env, const Prior& prior);

/// Dependent exchange acceptance with an auxiliary dataset:
/// beta (R(D, theta') - R(D, theta)) + beta (R(D', theta) - R(D', theta')) + prior term.
double double_mh_acceptance_dependent(const RewardParams& theta, const RewardParams& proposal,
                                      const Dataset& auxiliary, const Dataset& data,
                                      Rationality beta, const Environment& env,
                                      const Prior& prior);

/// Double Metropolis-Hastings: each proposal draws one auxiliary trajectory
/// (or dataset, for dependent data) from an inner chain at theta'.
Chain double_mh_posterior(const Dataset& data, Rationality beta, const Environment& env,
                          const MhConfig& outer, const InnerConfig& inner, const Prior& prior);

/// Extrinsic mean on the sphere: coordinate-wise mean, renormalized.
RewardParams posterior_mean(const Chain& chain);

}  // namespace birl
