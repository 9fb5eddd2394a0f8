#include "birl/inference.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "birl/csv.hpp"
#include "birl/environments.hpp"

namespace birl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kInitAttempts = 100;

bool accept(double log_ratio, Rng& rng) { return std::log(uniform01(rng)) < log_ratio; }

// Unnormalized log posterior in theta (constants in theta dropped).
double log_target(const RewardParams& theta, const Dataset& data, Rationality beta,
                  const Normalizer& normalizer, const Environment& env, const Prior& prior) {
  const double log_prior = prior.log_density(theta);
  if (log_prior == kNegInf) return kNegInf;
  if (data.dependence() == Dependence::Independent) {
    if (normalizer.over_datasets()) {
      throw ContractViolation("independent data needs a trajectory-space normalizer");
    }
    const double reward = dataset_reward_independent(data, theta, env);
    const double k = static_cast<double>(data.size());
    return beta.value() * reward - k * normalizer.log_z(theta) + log_prior;
  }
  if (!normalizer.over_datasets() &&
      normalizer.strategy().kind != NormalizerStrategy::Kind::Ignore) {
    throw ContractViolation("dependent data needs a dataset-space normalizer");
  }
  return beta.value() * dataset_reward_dependent(data, theta, env) - normalizer.log_z(theta) +
         log_prior;
}

Vector random_direction(std::size_t dim, Rng& rng) {
  Vector v(dim);
  for (double& x : v) x = standard_normal(rng);
  return v;
}

void keep_sample(Chain& chain, const MhConfig& config, std::size_t it, const RewardParams& theta,
                 bool accepted, double log_ratio) {
  if (it < config.burn_in) return;
  if ((it - config.burn_in + 1) % config.thinning != 0) return;
  chain.samples.push_back(theta);
  chain.sample_iterations.push_back(it);
  chain.sample_accepted.push_back(accepted);
  chain.log_ratio_trace.push_back(log_ratio);
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

// ----------------------------------------------------------------- Prior

Prior Prior::uniform_sphere(std::size_t dim) {
  if (dim == 0) throw ContractViolation("prior dimension must be positive");
  return Prior(Support::Sphere, dim, {});
}

Prior Prior::positive_orthant(std::size_t dim) {
  if (dim == 0) throw ContractViolation("prior dimension must be positive");
  return Prior(Support::PositiveOrthant, dim, {});
}

Prior Prior::discrete(std::vector<Vector> hypotheses) {
  if (hypotheses.empty()) throw ContractViolation("discrete prior needs at least one hypothesis");
  const std::size_t dim = hypotheses.front().size();
  for (const auto& h : hypotheses) {
    if (h.size() != dim) throw ContractViolation("hypotheses must share one dimension");
    RewardParams::continuous(h);
  }
  return Prior(Support::Finite, dim, std::move(hypotheses));
}

Prior Prior::for_environment(const Environment& env) {
  auto hyps = env.hypotheses();
  if (!hyps.empty()) return discrete(std::move(hyps));
  return continuous_for(env);
}

Prior Prior::continuous_for(const Environment& env) {
  return env.theta_domain() == ThetaDomain::Sphere ? uniform_sphere(env.feature_dim())
                                                   : positive_orthant(env.feature_dim());
}

double Prior::log_density(const RewardParams& theta) const {
  if (theta.dimension() != dim_) throw ContractViolation("prior dimension mismatch");
  switch (support_) {
    case Support::Sphere:
      return 0.0;
    case Support::PositiveOrthant:
      for (double x : theta.values()) {
        if (x < 0.0) return kNegInf;
      }
      return 0.0;
    case Support::Finite:
      return theta.is_discrete() && theta.index() < hypotheses_.size() ? 0.0 : kNegInf;
  }
  return kNegInf;
}

RewardParams Prior::sample(Rng& rng) const {
  if (support_ == Support::Finite) {
    std::uniform_int_distribution<std::size_t> pick(0, hypotheses_.size() - 1);
    return RewardParams::discrete(pick(rng), hypotheses_);
  }
  while (true) {
    Vector v = random_direction(dim_, rng);
    if (support_ == Support::PositiveOrthant) {
      for (double& x : v) x = std::abs(x);
    }
    if (norm(v) > 1e-12) return RewardParams::from_direction(std::move(v));
  }
}

RewardParams Prior::propose(const RewardParams& theta, double scale, Rng& rng) const {
  if (support_ != Support::Finite) return propose_theta(theta, scale, rng);
  const std::size_t n = hypotheses_.size();
  if (n == 1) return theta;
  std::uniform_int_distribution<std::size_t> pick(0, n - 2);
  std::size_t next = pick(rng);
  if (next >= theta.index()) ++next;
  return RewardParams::discrete(next, hypotheses_);
}

// ---------------------------------------------------------------- configs

void MhConfig::validate() const {
  if (iterations == 0) throw ConfigError("MH iterations must be positive");
  if (burn_in >= iterations) throw ConfigError("MH burn-in must be smaller than iterations");
  if (thinning == 0) throw ConfigError("MH thinning must be >= 1");
  if (!(proposal_scale > 0.0) || !std::isfinite(proposal_scale)) {
    throw ConfigError("MH proposal scale must be positive");
  }
}

void InnerConfig::validate() const {
  if (!(proposal_scale > 0.0) || !std::isfinite(proposal_scale)) {
    throw ConfigError("inner proposal scale must be positive");
  }
}

void write_chain_csv(const Chain& chain, std::ostream& out) {
  const std::size_t dim = chain.samples.empty() ? 0 : chain.samples.front().dimension();
  out << "seed,iteration";
  for (std::size_t j = 0; j < dim; ++j) out << ",theta_" << j;
  out << ",accepted\n";
  for (std::size_t i = 0; i < chain.samples.size(); ++i) {
    out << chain.config.seed << ',' << chain.sample_iterations[i];
    for (double x : chain.samples[i].values()) out << ',' << format_real(x);
    out << ',' << (chain.sample_accepted[i] ? 1 : 0) << '\n';
  }
}

// ------------------------------------------------------------ operations

RewardParams propose_theta(const RewardParams& theta, double scale, Rng& rng) {
  if (theta.is_discrete()) throw ContractViolation("propose_theta needs continuous parameters");
  if (scale == 0.0) return theta;
  const auto values = theta.values();
  Vector step = random_direction(values.size(), rng);
  const double along = dot(step, values);
  Vector next(values.size());
  for (std::size_t j = 0; j < next.size(); ++j) {
    next[j] = values[j] + scale * (step[j] - along * values[j]);
  }
  return RewardParams::from_direction(std::move(next));
}

double acceptance_ratio_independent(const RewardParams& theta, const RewardParams& proposal,
                                    const Dataset& data, Rationality beta,
                                    const Normalizer& normalizer, const Environment& env,
                                    const Prior& prior) {
  if (data.dependence() != Dependence::Independent) {
    throw ContractViolation("acceptance_ratio_independent requires an independent dataset");
  }
  if (theta == proposal) return 0.0;
  const double next = log_target(proposal, data, beta, normalizer, env, prior);
  if (next == kNegInf) return kNegInf;
  return next - log_target(theta, data, beta, normalizer, env, prior);
}

double acceptance_ratio_independent(const RewardParams& theta, const RewardParams& proposal,
                                    const Dataset& data, Rationality beta,
                                    const NormalizerStrategy& strategy, const Environment& env,
                                    const Prior& prior) {
  return acceptance_ratio_independent(theta, proposal, data, beta, Normalizer(strategy, beta, env),
                                      env, prior);
}

double acceptance_ratio_dependent(const RewardParams& theta, const RewardParams& proposal,
                                  const Dataset& data, Rationality beta,
                                  const Normalizer& normalizer, const Environment& env,
                                  const Prior& prior) {
  if (data.dependence() != Dependence::Dependent) {
    throw ContractViolation("acceptance_ratio_dependent requires a dependent dataset");
  }
  if (theta == proposal) return 0.0;
  const double next = log_target(proposal, data, beta, normalizer, env, prior);
  if (next == kNegInf) return kNegInf;
  return next - log_target(theta, data, beta, normalizer, env, prior);
}

DatasetSpace dataset_space_for(const Dataset& data, double half_width) {
  return DatasetSpace{data.initial(), data.size(), half_width};
}

Chain mh_posterior(const Dataset& data, Rationality beta, const Normalizer& normalizer,
                   const Environment& env, const MhConfig& config, const Prior& prior) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  Chain chain;
  chain.config = config;

  RewardParams theta = prior.sample(rng);
  double current = log_target(theta, data, beta, normalizer, env, prior);
  for (int attempt = 1; !std::isfinite(current); ++attempt) {
    if (attempt >= kInitAttempts) {
      throw InitializationError("no finite log-posterior after " + std::to_string(kInitAttempts) +
                                " prior draws");
    }
    theta = prior.sample(rng);
    current = log_target(theta, data, beta, normalizer, env, prior);
  }

  for (std::size_t it = 0; it < config.iterations; ++it) {
    RewardParams proposal = prior.propose(theta, config.proposal_scale, rng);
    const double next = log_target(proposal, data, beta, normalizer, env, prior);
    const double log_ratio = next == kNegInf ? kNegInf : next - current;
    const bool accepted = accept(log_ratio, rng);
    ++chain.proposals;
    if (accepted) {
      theta = std::move(proposal);
      current = next;
      ++chain.accepted;
    }
    keep_sample(chain, config, it, theta, accepted, log_ratio);
  }
  chain.seconds = elapsed_since(start);
  return chain;
}

Trajectory inner_sampler(const Dataset& data, const RewardParams& theta, Rationality beta,
                         const Environment& env, const InnerConfig& config, Rng& rng) {
  config.validate();
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  Trajectory xi = data[pick(rng)];
  double reward = trajectory_reward(xi, theta, env);
  for (std::size_t i = 0; i < config.iterations; ++i) {
    Trajectory candidate = perturb_trajectory(xi, config.proposal_scale, env, rng);
    const double candidate_reward = trajectory_reward(candidate, theta, env);
    if (accept(beta.value() * (candidate_reward - reward), rng)) {
      xi = std::move(candidate);
      reward = candidate_reward;
    }
  }
  return xi;
}

Dataset inner_sampler_dependent(const Dataset& data, const RewardParams& theta, Rationality beta,
                                const Environment& env, const InnerConfig& config, Rng& rng) {
  config.validate();
  Dataset current = data;
  double reward = dataset_reward_dependent(current, theta, env);
  for (std::size_t i = 0; i < config.iterations; ++i) {
    Dataset candidate = current;
    for (auto& xi : candidate.trajectories_mutable()) {
      xi = perturb_trajectory(xi, config.proposal_scale, env, rng);
    }
    const double candidate_reward = dataset_reward_dependent(candidate, theta, env);
    if (accept(beta.value() * (candidate_reward - reward), rng)) {
      current = std::move(candidate);
      reward = candidate_reward;
    }
  }
  return current;
}

double double_mh_acceptance(const RewardParams& theta, const RewardParams& proposal,
                            const Trajectory& auxiliary, const Dataset& data, Rationality beta,
                            const Environment& env, const Prior& prior) {
  if (theta == proposal) return 0.0;
  const double log_prior_next = prior.log_density(proposal);
  if (log_prior_next == kNegInf) return kNegInf;
  double data_term = 0.0;
  for (const auto& xi : data.trajectories()) {
    data_term += trajectory_reward(xi, proposal, env) - trajectory_reward(xi, theta, env);
  }
  const double k = static_cast<double>(data.size());
  const double aux_term =
      k * (trajectory_reward(auxiliary, theta, env) - trajectory_reward(auxiliary, proposal, env));
  return beta.value() * (data_term + aux_term) + log_prior_next - prior.log_density(theta);
}

double double_mh_acceptance_dependent(const RewardParams& theta, const RewardParams& proposal,
                                      const Dataset& auxiliary, const Dataset& data,
                                      Rationality beta, const Environment& env,
                                      const Prior& prior) {
  if (theta == proposal) return 0.0;
  const double log_prior_next = prior.log_density(proposal);
  if (log_prior_next == kNegInf) return kNegInf;
  const double data_term =
      dataset_reward_dependent(data, proposal, env) - dataset_reward_dependent(data, theta, env);
  const double aux_term = dataset_reward_dependent(auxiliary, theta, env) -
                          dataset_reward_dependent(auxiliary, proposal, env);
  return beta.value() * (data_term + aux_term) + log_prior_next - prior.log_density(theta);
}

Chain double_mh_posterior(const Dataset& data, Rationality beta, const Environment& env,
                          const MhConfig& outer, const InnerConfig& inner, const Prior& prior) {
  outer.validate();
  inner.validate();
  const auto start = std::chrono::steady_clock::now();
  Rng rng(outer.seed);
  Chain chain;
  chain.config = outer;
  const bool dependent = data.dependence() == Dependence::Dependent;

  RewardParams theta = prior.sample(rng);
  for (std::size_t it = 0; it < outer.iterations; ++it) {
    RewardParams proposal = prior.propose(theta, outer.proposal_scale, rng);
    double log_ratio = kNegInf;
    if (prior.log_density(proposal) != kNegInf) {
      Rng inner_rng(InnerConfig::seed_for(outer.seed, it));
      if (dependent) {
        const Dataset aux = inner_sampler_dependent(data, proposal, beta, env, inner, inner_rng);
        log_ratio = double_mh_acceptance_dependent(theta, proposal, aux, data, beta, env, prior);
      } else {
        const Trajectory aux = inner_sampler(data, proposal, beta, env, inner, inner_rng);
        log_ratio = double_mh_acceptance(theta, proposal, aux, data, beta, env, prior);
      }
    }
    const bool accepted = accept(log_ratio, rng);
    ++chain.proposals;
    if (accepted) {
      theta = std::move(proposal);
      ++chain.accepted;
    }
    keep_sample(chain, outer, it, theta, accepted, log_ratio);
  }
  chain.seconds = elapsed_since(start);
  return chain;
}

RewardParams posterior_mean(const Chain& chain) {
  if (chain.samples.empty()) throw ContractViolation("posterior_mean of an empty chain");
  Vector mean(chain.samples.front().dimension(), 0.0);
  for (const auto& s : chain.samples) {
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += s[j];
  }
  for (double& x : mean) x /= static_cast<double>(chain.samples.size());
  if (norm(mean) < 1e-12) {
    throw DegenerateEstimate("posterior samples average to the zero vector");
  }
  return RewardParams::from_direction(std::move(mean));
}

}  // namespace birl
