#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "birl/config.hpp"
#include "birl/environments.hpp"
#include "birl/experiments.hpp"
#include "birl/inference.hpp"
#include "birl/metrics.hpp"
#include "birl/teacher.hpp"

namespace py = pybind11;
using namespace birl;

namespace {

using EnvHandle = std::shared_ptr<Environment>;

Vector to_vector(std::span<const double> s) { return Vector(s.begin(), s.end()); }

Normalizer make_normalizer(const NormalizerStrategy& strategy, double beta, const Environment& env,
                           const Dataset& data, double half_width) {
  if (data.dependence() == Dependence::Dependent) {
    return Normalizer(strategy, Rationality(beta), env, dataset_space_for(data, half_width));
  }
  return Normalizer(strategy, Rationality(beta), env);
}

MhConfig mh_config(std::size_t iterations, std::size_t burn_in, std::size_t thinning, double scale,
                   std::uint64_t seed) {
  MhConfig cfg{iterations, burn_in, thinning, scale, seed};
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bayesian reward learning with normalizer approximations and Double MH";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DegenerateEstimate>(m, "DegenerateEstimate", PyExc_ArithmeticError);

  py::class_<Environment, EnvHandle>(m, "Environment")
      .def_property_readonly("name", &Environment::name)
      .def_property_readonly("horizon", &Environment::horizon)
      .def_property_readonly("state_dim", &Environment::state_dim)
      .def_property_readonly("feature_dim", &Environment::feature_dim)
      .def_property_readonly("initial_trajectory", &Environment::initial_trajectory);

  m.def(
      "make_environment",
      [](const std::string& name, const std::map<std::string, std::string>& params) {
        return std::const_pointer_cast<Environment>(make_environment(name, params));
      },
      py::arg("name"), py::arg("params") = std::map<std::string, std::string>{},
      "Build 'cup', 'path' or 'sphere' from string parameters.");

  py::class_<RewardParams>(m, "RewardParams")
      .def_static("from_angle", &RewardParams::from_angle)
      .def_static("from_direction", &RewardParams::from_direction)
      .def_property_readonly("values", [](const RewardParams& t) { return to_vector(t.values()); })
      .def("__repr__", [](const RewardParams& t) {
        std::ostringstream s;
        s << "RewardParams(" << t[0];
        for (std::size_t i = 1; i < t.dimension(); ++i) s << ", " << t[i];
        return s.str() + ")";
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init<std::size_t, Vector>(), py::arg("state_dim"), py::arg("flat"))
      .def_static("from_scalars",
                  [](const Vector& v) { return Trajectory::from_scalars(v); })
      .def_property_readonly("flat", [](const Trajectory& t) { return to_vector(t.flat()); })
      .def_property_readonly("length", &Trajectory::length)
      .def(py::self == py::self);

  py::class_<Dataset>(m, "Dataset")
      .def_static("independent", &Dataset::independent)
      .def_static("dependent", &Dataset::dependent, py::arg("initial"), py::arg("corrections"))
      .def_property_readonly("trajectories", &Dataset::trajectories)
      .def_property_readonly("dependent_mode",
                             [](const Dataset& d) { return d.dependence() == Dependence::Dependent; })
      .def("__len__", &Dataset::size);

  py::class_<NormalizerStrategy>(m, "NormalizerStrategy")
      .def_static("ignore", &NormalizerStrategy::ignore)
      .def_static("mean_sampling", &NormalizerStrategy::mean_sampling, py::arg("samples"),
                  py::arg("seed"))
      .def_static("maximum", &NormalizerStrategy::maximum)
      .def_static("exact_quadrature", &NormalizerStrategy::exact_quadrature)
      .def_property_readonly("kind", [](const NormalizerStrategy& s) { return to_string(s.kind); });

  m.def("trajectory_reward",
        [](const Trajectory& xi, const RewardParams& t, const EnvHandle& env) {
          return trajectory_reward(xi, t, *env);
        });
  m.def("feature_vector",
        [](const Trajectory& xi, const EnvHandle& env) { return feature_vector(xi, *env); });
  m.def("dataset_reward", [](const Dataset& d, const RewardParams& t, const EnvHandle& env) {
    return dataset_reward(d, t, *env);
  });

  m.def("z_exact", [](const RewardParams& t, double beta, const EnvHandle& env) {
    return z_exact(t, Rationality(beta), *env).value;
  });
  m.def(
      "z_mean",
      [](const RewardParams& t, double beta, const EnvHandle& env, std::size_t n,
         std::uint64_t seed) { return z_mean(t, Rationality(beta), *env, n, Rng(seed)).value; },
      py::arg("theta"), py::arg("beta"), py::arg("env"), py::arg("samples"), py::arg("seed"));
  m.def("z_max", [](const RewardParams& t, double beta, const EnvHandle& env) {
    return z_max(t, Rationality(beta), *env).value;
  });
  m.def("log_likelihood", [](const Trajectory& xi, const RewardParams& t, double beta,
                             const NormalizerStrategy& s, const EnvHandle& env) {
    return log_likelihood(xi, t, Rationality(beta), s, *env);
  });
  m.def(
      "belief_two_hypothesis",
      [](double s, double beta, const NormalizerStrategy& strategy) {
        return belief_two_hypothesis(Trajectory::from_scalars(std::vector<double>{s}),
                                     Rationality(beta), strategy);
      },
      py::arg("demo"), py::arg("beta"), py::arg("strategy"),
      "Posterior of theta = 0 on the cup after one demonstrated angle.");
  m.def(
      "belief_error",
      [](const NormalizerStrategy& strategy, double s, double beta) {
        return belief_error(strategy, Trajectory::from_scalars(std::vector<double>{s}),
                            Rationality(beta));
      },
      py::arg("strategy"), py::arg("demo"), py::arg("beta"));
  m.def("check_spherical_invariance",
        [](const EnvHandle& env, const std::vector<RewardParams>& thetas, double beta, double tol) {
          return check_spherical_invariance(*env, thetas, Rationality(beta), tol);
        });

  py::class_<Chain>(m, "Chain")
      .def_property_readonly("samples",
                             [](const Chain& c) {
                               std::vector<Vector> out;
                               for (const auto& s : c.samples) out.push_back(to_vector(s.values()));
                               return out;
                             })
      .def_property_readonly("acceptance_rate", &Chain::acceptance_rate)
      .def_readonly("proposals", &Chain::proposals)
      .def_readonly("accepted", &Chain::accepted)
      .def("to_csv", [](const Chain& c) {
        std::ostringstream s;
        write_chain_csv(c, s);
        return s.str();
      });

  m.def(
      "mh_posterior",
      [](const Dataset& data, double beta, const NormalizerStrategy& strategy, const EnvHandle& env,
         std::size_t iterations, std::size_t burn_in, std::size_t thinning, double scale,
         std::uint64_t seed, double half_width) {
        const auto normalizer = make_normalizer(strategy, beta, *env, data, half_width);
        return mh_posterior(data, Rationality(beta), normalizer, *env,
                            mh_config(iterations, burn_in, thinning, scale, seed),
                            Prior::continuous_for(*env));
      },
      py::arg("data"), py::arg("beta"), py::arg("strategy"), py::arg("env"),
      py::arg("iterations") = 6000, py::arg("burn_in") = 1000, py::arg("thinning") = 1,
      py::arg("proposal_scale") = 0.15, py::arg("seed") = 0,
      py::arg("half_width") = std::numeric_limits<double>::infinity(),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "double_mh_posterior",
      [](const Dataset& data, double beta, const EnvHandle& env, std::size_t iterations,
         std::size_t burn_in, std::size_t thinning, double scale, std::uint64_t seed,
         std::size_t inner_iterations, double inner_scale) {
        return double_mh_posterior(data, Rationality(beta), *env,
                                   mh_config(iterations, burn_in, thinning, scale, seed),
                                   InnerConfig{inner_iterations, inner_scale},
                                   Prior::continuous_for(*env));
      },
      py::arg("data"), py::arg("beta"), py::arg("env"), py::arg("iterations") = 6000,
      py::arg("burn_in") = 1000, py::arg("thinning") = 1, py::arg("proposal_scale") = 0.15,
      py::arg("seed") = 0, py::arg("inner_iterations") = 500, py::arg("inner_scale") = 0.1,
      py::call_guard<py::gil_scoped_release>());
  m.def("posterior_mean", &posterior_mean);

  m.def("theta_error", &theta_error);
  m.def("regret", [](const RewardParams& truth, const RewardParams& estimate, const EnvHandle& env) {
    return regret(truth, estimate, *env);
  });
  m.def("optimal_trajectory",
        [](const RewardParams& t, const EnvHandle& env) { return optimal_trajectory(t, *env); });

  m.def(
      "draw_teacher_dataset",
      [](const EnvHandle& env, double beta, std::size_t demonstrations, bool dependent,
         std::uint64_t seed) {
        const auto spec = draw_teacher(*env, beta, demonstrations,
                                       dependent ? Dependence::Dependent : Dependence::Independent,
                                       seed);
        Rng rng(derive_seed(seed, 1));
        return std::make_pair(spec.theta, generate_dataset(spec, *env, rng));
      },
      py::arg("env"), py::arg("beta"), py::arg("demonstrations") = 3, py::arg("dependent") = false,
      py::arg("seed") = 0, "Simulated teacher: returns (true theta, dataset).");

  py::class_<Claim>(m, "Claim")
      .def_readonly("name", &Claim::name)
      .def_readonly("passed", &Claim::passed)
      .def_readonly("detail", &Claim::detail);

  m.def("validate_config", [](const std::filesystem::path& path) {
    const auto cfg = load_config(path);
    if (cfg.experiment) {
      cfg.validate_for(*cfg.experiment);
    } else {
      cfg.validate();
    }
  });
  m.def(
      "run_experiment",
      [](const std::string& experiment, const std::filesystem::path& config,
         std::optional<std::filesystem::path> out, std::size_t workers, std::size_t teachers) {
        const auto id = parse_experiment_id(experiment);
        auto cfg = load_config(config);
        if (out) cfg.out = *out;
        if (workers > 0) cfg.workers = workers;
        if (teachers > 0) cfg.teachers = teachers;
        cfg.validate_for(id);
        py::gil_scoped_release release;
        const auto report = run_experiment(id, cfg);
        return std::make_pair(report.files, report.claims);
      },
      py::arg("experiment"), py::arg("config"), py::arg("out") = std::nullopt,
      py::arg("workers") = 0, py::arg("teachers") = 0,
      "Run an experiment; returns (files written, claims).");
}
