#include "birl/human_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "birl/environments.hpp"
#include "birl/numeric.hpp"

namespace birl {

namespace {

std::atomic<std::uint64_t> g_normalizer_evaluations{0};

void count_evaluation() { g_normalizer_evaluations.fetch_add(1, std::memory_order_relaxed); }

constexpr std::size_t kMultiAxisGridCap = 200;

struct Interval {
  double lo;
  double hi;
};

// Midpoint nodes over [lo, hi] plus the node weight (cell width). A
// zero-width interval is a single node of weight 1.
std::pair<Vector, double> midpoint_nodes(Interval iv, std::size_t n) {
  if (iv.hi == iv.lo) return {Vector{iv.lo}, 1.0};
  const double h = (iv.hi - iv.lo) / static_cast<double>(n);
  Vector nodes(n);
  for (std::size_t k = 0; k < n; ++k) nodes[k] = iv.lo + h * (static_cast<double>(k) + 0.5);
  return {std::move(nodes), h};
}

// theta . g_c(x) at each node.
Vector coordinate_rewards(const Environment& env, const RewardParams& theta, std::size_t coord,
                          std::span<const double> nodes) {
  Vector out(nodes.size());
  Vector phi(env.feature_dim());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    env.coordinate_features(coord, nodes[k], phi);
    out[k] = dot(theta.values(), phi);
  }
  return out;
}

// log of the midpoint integral of exp(beta theta . phi(s)) over one state box.
double log_state_integral(const RewardParams& theta, double beta, const Environment& env) {
  const auto& b = env.bounds();
  const std::size_t dim = env.state_dim();
  if (env.coordinate_separable()) {
    double total = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const auto [nodes, h] = midpoint_nodes({b.lower[c], b.upper[c]}, env.grid_resolution());
      Vector terms = coordinate_rewards(env, theta, c, nodes);
      for (double& v : terms) v *= beta;
      total += log_sum_exp(terms) + std::log(h);
    }
    return total;
  }
  const std::size_t n =
      dim == 1 ? env.grid_resolution() : std::min(env.grid_resolution(), kMultiAxisGridCap);
  std::vector<Vector> axes;
  double log_cell = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    auto [nodes, h] = midpoint_nodes({b.lower[c], b.upper[c]}, n);
    axes.push_back(std::move(nodes));
    log_cell += std::log(h);
  }
  std::vector<std::size_t> idx(dim, 0);
  Vector s(dim);
  Vector phi(env.feature_dim());
  Vector terms;
  while (true) {
    for (std::size_t c = 0; c < dim; ++c) s[c] = axes[c][idx[c]];
    env.state_features(s, phi);
    terms.push_back(beta * dot(theta.values(), phi));
    std::size_t c = 0;
    while (c < dim && ++idx[c] == axes[c].size()) idx[c++] = 0;
    if (c == dim) break;
  }
  return log_sum_exp(terms) + log_cell;
}

void check_dataset_space(const Environment& env, const DatasetSpace& space) {
  if (!env.coordinate_separable()) {
    throw ConfigError("dataset-space quadrature needs a coordinate-separable environment ('" +
                      env.name() + "' is not)");
  }
  for (bool p : env.bounds().periodic) {
    if (p) throw ConfigError("dataset-space quadrature does not support periodic coordinates");
  }
  if (space.corrections == 0) throw ContractViolation("dataset space needs at least one correction");
  if (space.grid < 2) throw ConfigError("dataset-space grid needs at least 2 points");
  env.validate(space.initial);
}

Interval correction_interval(const Environment& env, const DatasetSpace& space, double start,
                             std::size_t coord) {
  const auto& b = env.bounds();
  if (b.width(coord) == 0.0 || std::isinf(space.half_width)) return {b.lower[coord], b.upper[coord]};
  const double hw = space.half_width * b.width(coord);
  return {std::max(b.lower[coord], start - hw), std::min(b.upper[coord], start + hw)};
}

}  // namespace

Rationality::Rationality(double beta) : beta_(beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ContractViolation("rationality beta must be finite and >= 0");
  }
}

NormalizerStrategy NormalizerStrategy::mean_sampling(std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw ContractViolation("mean sampling needs N >= 1 samples");
  return {Kind::MeanSampling, samples, seed};
}

std::string to_string(NormalizerStrategy::Kind kind) {
  switch (kind) {
    case NormalizerStrategy::Kind::Ignore: return "ignore";
    case NormalizerStrategy::Kind::MeanSampling: return "sample";
    case NormalizerStrategy::Kind::Maximum: return "maximum";
    case NormalizerStrategy::Kind::ExactQuadrature: return "exact";
  }
  return "unknown";
}

std::uint64_t normalizer_evaluations() {
  return g_normalizer_evaluations.load(std::memory_order_relaxed);
}

LogNormalizer z_exact(const RewardParams& theta, Rationality beta, const Environment& env) {
  count_evaluation();
  if (theta.dimension() != env.feature_dim()) {
    throw ContractViolation("reward parameter dimension does not match the environment");
  }
  const double per_state = log_state_integral(theta, beta.value(), env);
  return {static_cast<double>(env.horizon()) * per_state,
          NormalizerStrategy::Kind::ExactQuadrature,
          Vector(theta.values().begin(), theta.values().end())};
}

LogNormalizer z_mean(const RewardParams& theta, Rationality beta, const Environment& env,
                     std::size_t samples, Rng rng) {
  count_evaluation();
  if (samples == 0) throw ContractViolation("mean sampling needs N >= 1 samples");
  Vector terms(samples);
  for (auto& term : terms) {
    term = beta.value() * trajectory_reward(sample_uniform_trajectory(env, rng), theta, env);
  }
  return {log_mean_exp(terms), NormalizerStrategy::Kind::MeanSampling,
          Vector(theta.values().begin(), theta.values().end())};
}

LogNormalizer z_max(const RewardParams& theta, Rationality beta, const Environment& env) {
  count_evaluation();
  const double best = trajectory_reward(optimal_trajectory(theta, env), theta, env);
  return {beta.value() * best, NormalizerStrategy::Kind::Maximum,
          Vector(theta.values().begin(), theta.values().end())};
}

LogNormalizer z_exact_dataset(const RewardParams& theta, Rationality beta, const Environment& env,
                              const DatasetSpace& space) {
  count_evaluation();
  check_dataset_space(env, space);
  const double bt = beta.value();
  const double w = bt * env.correction_penalty();
  const std::size_t dim = env.state_dim();
  double total = 0.0;
  for (std::size_t t = 0; t < space.initial.length(); ++t) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double start = space.initial.state(t)[c];
      const auto [nodes, h] = midpoint_nodes(correction_interval(env, space, start, c), space.grid);
      const Vector reward = coordinate_rewards(env, theta, c, nodes);
      const double log_h = std::log(h);
      const std::size_t n = nodes.size();
      // alpha_i(x) = exp(beta u(x)) h * sum_y alpha_{i-1}(y) exp(-w (x - y)^2)
      Vector alpha(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double d = nodes[k] - start;
        alpha[k] = bt * reward[k] - w * d * d + log_h;
      }
      Vector next(n);
      Vector terms(n);
      for (std::size_t i = 1; i < space.corrections; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t j = 0; j < n; ++j) {
            const double d = nodes[k] - nodes[j];
            terms[j] = alpha[j] - w * d * d;
          }
          next[k] = bt * reward[k] + log_h + log_sum_exp(terms);
        }
        std::swap(alpha, next);
      }
      total += log_sum_exp(alpha);
    }
  }
  return {total, NormalizerStrategy::Kind::ExactQuadrature,
          Vector(theta.values().begin(), theta.values().end())};
}

LogNormalizer z_mean_dataset(const RewardParams& theta, Rationality beta, const Environment& env,
                             const DatasetSpace& space, std::size_t samples, Rng rng) {
  count_evaluation();
  if (samples == 0) throw ContractViolation("mean sampling needs N >= 1 samples");
  Vector terms(samples);
  for (auto& term : terms) {
    const Dataset d =
        sample_dependent_dataset(env, space.initial, space.corrections, space.half_width, rng);
    term = beta.value() * dataset_reward_dependent(d, theta, env);
  }
  return {log_mean_exp(terms), NormalizerStrategy::Kind::MeanSampling,
          Vector(theta.values().begin(), theta.values().end())};
}

LogNormalizer z_max_dataset(const RewardParams& theta, Rationality beta, const Environment& env,
                            const DatasetSpace& space) {
  count_evaluation();
  check_dataset_space(env, space);
  const double w = env.correction_penalty();
  const std::size_t dim = env.state_dim();
  double best_total = 0.0;
  for (std::size_t t = 0; t < space.initial.length(); ++t) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double start = space.initial.state(t)[c];
      const Interval iv = correction_interval(env, space, start, c);
      const std::size_t n = iv.hi == iv.lo ? 1 : space.grid;
      Vector nodes(n, iv.lo);
      for (std::size_t k = 1; k < n; ++k) {
        nodes[k] = iv.lo + (iv.hi - iv.lo) * static_cast<double>(k) / static_cast<double>(n - 1);
      }
      const Vector reward = coordinate_rewards(env, theta, c, nodes);
      Vector value(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double d = nodes[k] - start;
        value[k] = reward[k] - w * d * d;
      }
      Vector next(n);
      for (std::size_t i = 1; i < space.corrections; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          double best = -std::numeric_limits<double>::infinity();
          for (std::size_t j = 0; j < n; ++j) {
            const double d = nodes[k] - nodes[j];
            best = std::max(best, value[j] - w * d * d);
          }
          next[k] = reward[k] + best;
        }
        std::swap(value, next);
      }
      best_total += *std::max_element(value.begin(), value.end());
    }
  }
  return {beta.value() * best_total, NormalizerStrategy::Kind::Maximum,
          Vector(theta.values().begin(), theta.values().end())};
}

// ------------------------------------------------------------ Normalizer

Normalizer::Normalizer(NormalizerStrategy strategy, Rationality beta, const Environment& env)
    : strategy_(strategy), beta_(beta), env_(&env) {
  if (strategy_.kind == NormalizerStrategy::Kind::MeanSampling) {
    if (strategy_.samples == 0) throw ContractViolation("mean sampling needs N >= 1 samples");
    Rng rng(strategy_.seed);
    for (std::size_t i = 0; i < strategy_.samples; ++i) {
      sample_features_.push_back(feature_vector(sample_uniform_trajectory(env, rng), env));
      sample_offsets_.push_back(0.0);
    }
  }
}

Normalizer::Normalizer(NormalizerStrategy strategy, Rationality beta, const Environment& env,
                       DatasetSpace space)
    : strategy_(strategy), beta_(beta), env_(&env), dataset_space_(std::move(space)) {
  if (strategy_.kind == NormalizerStrategy::Kind::MeanSampling) {
    if (strategy_.samples == 0) throw ContractViolation("mean sampling needs N >= 1 samples");
    Rng rng(strategy_.seed);
    const auto& ds = *dataset_space_;
    for (std::size_t i = 0; i < strategy_.samples; ++i) {
      const Dataset d = sample_dependent_dataset(env, ds.initial, ds.corrections, ds.half_width, rng);
      FeatureVector total(env.feature_dim(), 0.0);
      for (const auto& xi : d.trajectories()) {
        const auto phi = feature_vector(xi, env);
        for (std::size_t j = 0; j < phi.size(); ++j) total[j] += phi[j];
      }
      sample_features_.push_back(std::move(total));
      sample_offsets_.push_back(-dependent_penalty(d, env));
    }
  }
}

double Normalizer::log_z(const RewardParams& theta) const {
  using Kind = NormalizerStrategy::Kind;
  switch (strategy_.kind) {
    case Kind::Ignore:
      return 0.0;
    case Kind::MeanSampling: {
      count_evaluation();
      Vector terms(sample_features_.size());
      for (std::size_t i = 0; i < terms.size(); ++i) {
        terms[i] = beta_.value() * (dot(theta.values(), sample_features_[i]) + sample_offsets_[i]);
      }
      return log_mean_exp(terms);
    }
    case Kind::Maximum:
      return dataset_space_ ? z_max_dataset(theta, beta_, *env_, *dataset_space_).value
                            : z_max(theta, beta_, *env_).value;
    case Kind::ExactQuadrature:
      return dataset_space_ ? z_exact_dataset(theta, beta_, *env_, *dataset_space_).value
                            : z_exact(theta, beta_, *env_).value;
  }
  return 0.0;
}

// ---------------------------------------------------------- likelihoods

double log_likelihood(const Trajectory& xi, const RewardParams& theta, Rationality beta,
                      const NormalizerStrategy& strategy, const Environment& env) {
  const double log_z = Normalizer(strategy, beta, env).log_z(theta);
  return beta.value() * trajectory_reward(xi, theta, env) - log_z;
}

double belief_two_hypothesis(const Trajectory& xi, Rationality beta,
                             const NormalizerStrategy& strategy, const Environment& env) {
  const auto hyps = env.hypotheses();
  if (hyps.size() != 2) {
    throw ContractViolation("belief_two_hypothesis needs an environment with two hypotheses");
  }
  const Normalizer normalizer(strategy, beta, env);
  double score[2];
  for (std::size_t h = 0; h < 2; ++h) {
    const auto theta = RewardParams::discrete(h, hyps);
    score[h] = beta.value() * trajectory_reward(xi, theta, env) - normalizer.log_z(theta);
  }
  return std::exp(score[0] - log_add_exp(score[0], score[1]));
}

double belief_two_hypothesis(const Trajectory& xi, Rationality beta,
                             const NormalizerStrategy& strategy) {
  static const CupEnv cup;
  return belief_two_hypothesis(xi, beta, strategy, cup);
}

bool check_spherical_invariance(const Environment& env, std::span<const RewardParams> thetas,
                                Rationality beta, double tol) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& theta : thetas) {
    const double v = z_exact(theta, beta, env).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return thetas.empty() || hi - lo <= tol;
}

}  // namespace birl
