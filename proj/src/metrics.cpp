#include "birl/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "birl/csv.hpp"
#include "birl/environments.hpp"

namespace birl {

namespace {

constexpr double kRegretSlack = 1e-9;

std::string join_vector(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ';';
    out += format_real(v[i]);
  }
  return out;
}

// Messages may contain commas or quotes; keep the row well-formed.
std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

}  // namespace

double theta_error(const RewardParams& truth, const RewardParams& estimate) {
  if (truth.dimension() != estimate.dimension()) {
    throw ContractViolation("theta_error: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < truth.dimension(); ++j) {
    const double d = truth[j] - estimate[j];
    total += d * d;
  }
  return std::sqrt(total);
}

double belief_error(const NormalizerStrategy& strategy, const Trajectory& xi, Rationality beta,
                    const Environment& env) {
  const double exact =
      belief_two_hypothesis(xi, beta, NormalizerStrategy::exact_quadrature(), env);
  return std::abs(exact - belief_two_hypothesis(xi, beta, strategy, env));
}

double belief_error(const NormalizerStrategy& strategy, const Trajectory& xi, Rationality beta) {
  static const CupEnv cup;
  return belief_error(strategy, xi, beta, cup);
}

double regret(const RewardParams& truth, const RewardParams& estimate, const Environment& env) {
  const double best = trajectory_reward(optimal_trajectory(truth, env), truth, env);
  const double achieved = trajectory_reward(optimal_trajectory(estimate, env), truth, env);
  const double gap = best - achieved;
  if (gap < -kRegretSlack) {
    throw std::logic_error("negative regret " + format_real(gap) +
                           ": the optimal trajectory for theta_true was not found");
  }
  return std::max(gap, 0.0);
}

std::string eval_record_header() {
  return "environment,teacher_seed,method,learner_mode,data_mode,beta,theta_true,theta_hat,"
         "error,regret,acceptance_rate,status";
}

std::string to_csv_row(const EvalRecord& r) {
  std::string row = r.environment + ',' + std::to_string(r.teacher_seed) + ',' + r.method + ',' +
                    to_string(r.learner_mode) + ',' + to_string(r.data_mode) + ',' +
                    format_real(r.beta) + ',' + join_vector(r.theta_true) + ',';
  if (r.ok()) {
    row += join_vector(r.theta_hat) + ',' + format_real(r.error) + ',' + format_real(r.regret) +
           ',' + format_real(r.acceptance_rate);
  } else {
    row += ",,,";
  }
  return row + ',' + quote(r.status);
}

}  // namespace birl
