#pragma once

#include <cstdint>
#include <string>

#include "birl/environment.hpp"
#include "birl/human_model.hpp"

namespace birl {

/// ||theta_true - theta_hat||.
double theta_error(const RewardParams& truth, const RewardParams& estimate);

/// |belief with exact Z - belief with `strategy`| for the two-hypothesis
/// problem of `env` (the cup example by default).
double belief_error(const NormalizerStrategy& strategy, const Trajectory& xi, Rationality beta,
                    const Environment& env);
double belief_error(const NormalizerStrategy& strategy, const Trajectory& xi, Rationality beta);

/// R(xi*, theta_true) - R(xi_hat, theta_true) with xi* and xi_hat the
/// optimal trajectories for theta_true and theta_hat. Throws std::logic_error
/// if the gap is below -1e-9 (the argmax failed); otherwise clamped at 0.
double regret(const RewardParams& truth, const RewardParams& estimate, const Environment& env);

/// One learner evaluated on one simulated teacher.
struct EvalRecord {
  std::string environment;
  std::uint64_t teacher_seed = 0;
  std::string method;
  Dependence learner_mode = Dependence::Independent;
  Dependence data_mode = Dependence::Independent;
  double beta = 0.0;
  Vector theta_true;
  Vector theta_hat;
  double error = 0.0;
  double regret = 0.0;
  double acceptance_rate = 0.0;
  /// Wall time of the chain. Not written to CSV so reruns stay byte-identical.
  double seconds = 0.0;
  std::size_t iterations = 0;
  /// "ok", or "error: <message>" when the run failed.
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

std::string eval_record_header();
std::string to_csv_row(const EvalRecord& record);

}  // namespace birl
