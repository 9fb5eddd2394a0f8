#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "birl/environment.hpp"
#include "birl/random.hpp"

namespace birl {

/// Boltzmann rationality beta in [0, inf).
class Rationality {
 public:
  explicit Rationality(double beta);
  double value() const { return beta_; }

 private:
  double beta_;
};

/// How the likelihood's normalizer Z(theta) is handled.
///  - Ignore: Z = 1.
///  - MeanSampling: mean of exp(beta R) over N uniform draws. The draws come
///    from `seed`, so a fixed strategy is a deterministic function of theta.
///  - Maximum: max over the trajectory space of exp(beta R).
///  - ExactQuadrature: midpoint quadrature; a test oracle for small spaces.
struct NormalizerStrategy {
  enum class Kind { Ignore, MeanSampling, Maximum, ExactQuadrature };

  Kind kind = Kind::Ignore;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static NormalizerStrategy ignore() { return {Kind::Ignore, 0, 0}; }
  static NormalizerStrategy mean_sampling(std::size_t samples, std::uint64_t seed);
  static NormalizerStrategy maximum() { return {Kind::Maximum, 0, 0}; }
  static NormalizerStrategy exact_quadrature() { return {Kind::ExactQuadrature, 0, 0}; }
};

std::string to_string(NormalizerStrategy::Kind kind);

/// log Z(theta) under some strategy.
struct LogNormalizer {
  double value = 0.0;
  NormalizerStrategy::Kind strategy = NormalizerStrategy::Kind::Ignore;
  Vector theta;
};

/// Number of normalizer evaluations made by this process so far (all
/// threads). Lets tests check that a code path never touches Z.
std::uint64_t normalizer_evaluations();

/// log of the midpoint-rule integral of exp(beta R(xi, theta)) over the
/// trajectory space. Separable environments integrate each coordinate at the
/// environment's grid resolution; others use a full grid over the state box
/// (at most 200 points per axis beyond one dimension). Zero-width
/// coordinates are treated as a point mass.
LogNormalizer z_exact(const RewardParams& theta, Rationality beta, const Environment& env);

/// log of (1/N) sum exp(beta R(xi_i, theta)) for N uniform trajectories.
LogNormalizer z_mean(const RewardParams& theta, Rationality beta, const Environment& env,
                     std::size_t samples, Rng rng);

/// beta * max_xi R(xi, theta), located with optimal_trajectory.
LogNormalizer z_max(const RewardParams& theta, Rationality beta, const Environment& env);

/// Space of dependent datasets: K corrections chained from a fixed initial
/// trajectory. Each coordinate of each correction ranges over the initial
/// value +- half_width (fraction of the coordinate range), clipped to the
/// box; an infinite half-width means the whole box.
struct DatasetSpace {
  Trajectory initial;
  std::size_t corrections = 1;
  double half_width = std::numeric_limits<double>::infinity();
  /// Grid points per coordinate interval for the chained quadrature.
  std::size_t grid = 200;
};

/// Quadrature of exp(beta R(D, theta)) over the dataset space, using the
/// chain structure of the displacement penalty (forward recursion per
/// coordinate, O(K n^2)). Requires a coordinate-separable environment
/// without periodic coordinates.
LogNormalizer z_exact_dataset(const RewardParams& theta, Rationality beta, const Environment& env,
                              const DatasetSpace& space);

/// Mean of exp(beta R(D', theta)) over N datasets from sample_dependent_dataset.
LogNormalizer z_mean_dataset(const RewardParams& theta, Rationality beta, const Environment& env,
                             const DatasetSpace& space, std::size_t samples, Rng rng);

/// beta * max over the dataset space of R(D', theta) (Viterbi on the grid).
LogNormalizer z_max_dataset(const RewardParams& theta, Rationality beta, const Environment& env,
                            const DatasetSpace& space);

/// Strategy bound to an environment (and optionally a dataset space) for
/// repeated evaluation inside a sampler. MeanSampling draws its N
/// trajectories or datasets once at construction and reuses them, which
/// gives exactly z_mean(theta, ..., Rng(seed)) for every theta.
class Normalizer {
 public:
  Normalizer(NormalizerStrategy strategy, Rationality beta, const Environment& env);
  Normalizer(NormalizerStrategy strategy, Rationality beta, const Environment& env,
             DatasetSpace space);

  double log_z(const RewardParams& theta) const;
  const NormalizerStrategy& strategy() const { return strategy_; }
  bool over_datasets() const { return dataset_space_.has_value(); }

 private:
  NormalizerStrategy strategy_;
  Rationality beta_;
  const Environment* env_;
  std::optional<DatasetSpace> dataset_space_;
  // MeanSampling cache: summed features and theta-free reward offset per draw.
  std::vector<FeatureVector> sample_features_;
  std::vector<double> sample_offsets_;
};

/// beta R(xi, theta) - log Z(theta).
double log_likelihood(const Trajectory& xi, const RewardParams& theta, Rationality beta,
                      const NormalizerStrategy& strategy, const Environment& env);

/// Posterior probability of the first of two hypotheses (uniform prior)
/// after one trajectory, with Z from the given strategy. Requires an
/// environment exposing exactly two hypotheses.
double belief_two_hypothesis(const Trajectory& xi, Rationality beta,
                             const NormalizerStrategy& strategy, const Environment& env);

/// Same, on the cup working example (P(theta = 0 | xi)).
double belief_two_hypothesis(const Trajectory& xi, Rationality beta,
                             const NormalizerStrategy& strategy);

/// True iff log z_exact varies by at most `tol` across the given thetas.
bool check_spherical_invariance(const Environment& env, std::span<const RewardParams> thetas,
                                Rationality beta, double tol);

}  // namespace birl
