#include "birl/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <thread>

#include "birl/csv.hpp"
#include "birl/environments.hpp"
#include "birl/teacher.hpp"

namespace birl {

namespace {

constexpr double kMonotoneSlack = 1e-6;

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  const double n = static_cast<double>(xs.size());
  out.se = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

std::string optional_real(const std::optional<double>& x) {
  return x ? format_real(*x) : std::string();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("failed while writing '" + path.string() + "'");
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir.string() +
                             "': " + ec.message());
  }
}

std::string compare_detail(const std::string& a, double x, const std::string& b, double y) {
  return a + " " + format_real(x) + " vs " + b + " " + format_real(y);
}

// ----------------------------------------------------------- belief sweeps

double exact_belief(double demo, double beta) {
  const Trajectory xi = Trajectory::from_scalars(std::vector<double>{demo});
  return belief_two_hypothesis(xi, Rationality(beta), NormalizerStrategy::exact_quadrature());
}

double approx_error(double exact, double demo, double beta, const NormalizerStrategy& strategy) {
  const Trajectory xi = Trajectory::from_scalars(std::vector<double>{demo});
  return std::abs(exact - belief_two_hypothesis(xi, Rationality(beta), strategy));
}

// Sampling rows for one (beta, N): per demo mean over `runs` seeded draws,
// plus an optional grid-averaged row.
void sampling_rows(const std::string& sweep, double beta, std::size_t n,
                   const std::vector<double>& demos, const ExperimentConfig& cfg, bool aggregate,
                   std::vector<BeliefRow>& rows) {
  std::vector<double> all;
  for (double demo : demos) {
    const double exact = exact_belief(demo, beta);
    std::vector<double> errs;
    errs.reserve(cfg.runs);
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      const auto strategy = NormalizerStrategy::mean_sampling(n, derive_seed(cfg.seed, r));
      errs.push_back(approx_error(exact, demo, beta, strategy));
    }
    const auto s = mean_se(errs);
    rows.push_back({sweep, "sample", beta, n, demo, s.mean, s.se});
    all.insert(all.end(), errs.begin(), errs.end());
  }
  if (aggregate) {
    const auto s = mean_se(all);
    rows.push_back({sweep, "sample", beta, n, std::nullopt, s.mean, s.se});
  }
}

void deterministic_rows(const std::string& sweep, const NormalizerStrategy& strategy,
                        double beta, const std::vector<double>& demos, bool aggregate,
                        std::vector<BeliefRow>& rows) {
  const std::string name = to_string(strategy.kind);
  std::vector<double> all;
  for (double demo : demos) {
    const double err = approx_error(exact_belief(demo, beta), demo, beta, strategy);
    rows.push_back({sweep, name, beta, 0, demo, err, std::nullopt});
    all.push_back(err);
  }
  if (aggregate) {
    const auto s = mean_se(all);
    rows.push_back({sweep, name, beta, 0, std::nullopt, s.mean, std::nullopt});
  }
}

const BeliefRow* find_row(const std::vector<BeliefRow>& rows, const std::string& sweep,
                          const std::string& strategy, double beta, std::size_t samples,
                          std::optional<double> demo) {
  for (const auto& r : rows) {
    if (r.sweep == sweep && r.strategy == strategy && r.beta == beta && r.samples == samples &&
        r.demo == demo) {
      return &r;
    }
  }
  return nullptr;
}

// -------------------------------------------------------- teacher studies

struct Task {
  std::size_t beta_index;
  std::size_t teacher;
  Dependence learner_mode;
  Method method;
};

NormalizerStrategy strategy_for(Method m, const ExperimentConfig& cfg, std::uint64_t teacher_seed) {
  switch (m) {
    case Method::Ignore: return NormalizerStrategy::ignore();
    case Method::Sample:
      return NormalizerStrategy::mean_sampling(cfg.samples, derive_seed(teacher_seed, 3));
    case Method::Maximum: return NormalizerStrategy::maximum();
    case Method::Exact: return NormalizerStrategy::exact_quadrature();
    case Method::DoubleMh: break;
  }
  throw std::logic_error("double-mh has no normalizer strategy");
}

EvalRecord run_task(const Task& task, double beta, const ExperimentConfig& cfg,
                    const Environment& env, Dependence data_mode) {
  EvalRecord rec;
  rec.environment = env.name();
  rec.teacher_seed = cfg.seed + task.teacher;
  rec.method = to_string(task.method);
  rec.learner_mode = task.learner_mode;
  rec.data_mode = data_mode;
  rec.beta = beta;
  try {
    TeacherSpec spec = draw_teacher(env, beta, cfg.demonstrations, data_mode, rec.teacher_seed);
    spec.burn_in = cfg.teacher_burn_in;
    spec.proposal_scale = cfg.teacher_proposal_scale;
    rec.theta_true.assign(spec.theta.values().begin(), spec.theta.values().end());

    Rng data_rng(derive_seed(rec.teacher_seed, 1));
    const Dataset generated = generate_dataset(spec, env, data_rng);
    const Dataset data = task.learner_mode == Dependence::Independent &&
                                 generated.dependence() == Dependence::Dependent
                             ? Dataset::independent(generated.trajectories())
                             : generated;

    MhConfig mh = cfg.mh;
    mh.seed = derive_seed(rec.teacher_seed, 2);
    const Prior prior = Prior::continuous_for(env);
    const Rationality r(beta);

    Chain chain;
    if (task.method == Method::DoubleMh) {
      chain = double_mh_posterior(data, r, env, mh, cfg.inner, prior);
    } else {
      const auto strategy = strategy_for(task.method, cfg, rec.teacher_seed);
      if (data.dependence() == Dependence::Dependent) {
        const Normalizer z(strategy, r, env, dataset_space_for(data, cfg.half_width));
        chain = mh_posterior(data, r, z, env, mh, prior);
      } else {
        const Normalizer z(strategy, r, env);
        chain = mh_posterior(data, r, z, env, mh, prior);
      }
    }
    const RewardParams estimate = posterior_mean(chain);
    rec.theta_hat.assign(estimate.values().begin(), estimate.values().end());
    rec.error = theta_error(spec.theta, estimate);
    rec.regret = regret(spec.theta, estimate, env);
    rec.acceptance_rate = chain.acceptance_rate();
    rec.seconds = chain.seconds;
    rec.iterations = mh.iterations;
  } catch (const std::exception& e) {
    rec.status = std::string("error: ") + e.what();
  }
  return rec;
}

const SummaryRow* find_summary(const std::vector<SummaryRow>& summary, const std::string& method,
                               Dependence learner, double beta) {
  for (const auto& s : summary) {
    if (s.method == method && s.learner_mode == learner && s.beta == beta) return &s;
  }
  return nullptr;
}

std::vector<double> summary_betas(const std::vector<SummaryRow>& summary) {
  std::vector<double> betas;
  for (const auto& s : summary) {
    if (std::find(betas.begin(), betas.end(), s.beta) == betas.end()) betas.push_back(s.beta);
  }
  return betas;
}

void write_teacher_outputs(const std::vector<EvalRecord>& records,
                           const std::vector<SummaryRow>& summary, const ExperimentConfig& cfg,
                           ExperimentReport& report, std::ostream* log) {
  ensure_directory(cfg.out);
  const auto records_path = cfg.out / "records.csv";
  auto out = open_output(records_path);
  out << eval_record_header() << '\n';
  for (const auto& r : records) out << to_csv_row(r) << '\n';
  close_output(out, records_path);

  const auto summary_path = cfg.out / "summary.csv";
  auto sum = open_output(summary_path);
  sum << summary_header() << '\n';
  for (const auto& s : summary) sum << to_csv_row(s) << '\n';
  close_output(sum, summary_path);

  const auto runtime = runtime_report(records);
  const auto runtime_path = cfg.out / "runtime.txt";
  auto rt = open_output(runtime_path);
  write_runtime_report(runtime, rt);
  close_output(rt, runtime_path);
  if (log != nullptr) write_runtime_report(runtime, *log);

  report.files = {records_path, summary_path, runtime_path};
}

}  // namespace

bool ExperimentReport::all_passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.passed; });
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ------------------------------------------------------------ belief sweeps

std::string belief_row_header() {
  return "sweep,strategy,beta,samples,demo,mean_belief_error,std_error";
}

std::string to_csv_row(const BeliefRow& row) {
  return row.sweep + ',' + row.strategy + ',' + format_real(row.beta) + ',' +
         (row.samples > 0 ? std::to_string(row.samples) : std::string()) + ',' +
         optional_real(row.demo) + ',' + format_real(row.mean_belief_error) + ',' +
         optional_real(row.std_error);
}

std::vector<double> demo_grid(std::size_t points) {
  if (points == 0) throw ContractViolation("demo grid needs at least one point");
  if (points == 1) return {0.0};
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = std::numbers::pi / 2.0 * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

std::vector<BeliefRow> working_example_rows(const ExperimentConfig& cfg) {
  const auto demos = demo_grid(cfg.demo_points);
  const auto betas = cfg.betas_for(ExperimentId::WorkingExample);
  std::vector<BeliefRow> rows;
  for (double beta : betas) {
    deterministic_rows("ignore-vs-beta", NormalizerStrategy::ignore(), beta, demos, true, rows);
  }
  for (double beta : betas) {
    deterministic_rows("maximum-vs-beta", NormalizerStrategy::maximum(), beta, demos, true, rows);
  }
  for (std::size_t n : cfg.sample_sizes) {
    sampling_rows("sampling-vs-n", 1.0, n, demos, cfg, true, rows);
  }
  auto cross = crossover_rows(cfg);
  rows.insert(rows.end(), cross.begin(), cross.end());
  return rows;
}

std::vector<BeliefRow> crossover_rows(const ExperimentConfig& cfg) {
  const auto demos = demo_grid(cfg.demo_points);
  std::vector<BeliefRow> rows;
  for (double beta : cfg.crossover_betas) {
    sampling_rows("crossover", beta, cfg.samples, demos, cfg, true, rows);
    deterministic_rows("crossover", NormalizerStrategy::maximum(), beta, demos, true, rows);
  }
  return rows;
}

std::vector<Claim> working_example_claims(const std::vector<BeliefRow>& rows,
                                          const ExperimentConfig& cfg) {
  std::vector<Claim> claims;
  const auto betas = cfg.betas_for(ExperimentId::WorkingExample);

  if (const auto* r = find_row(rows, "ignore-vs-beta", "ignore", 1.0, 0, 0.0)) {
    const bool ok = std::abs(r->mean_belief_error - 0.919) <= 0.005;
    claims.push_back({"ignore belief error at beta=1, demo 0 is 0.919 +- 0.005", ok,
                      "got " + format_real(r->mean_belief_error)});
  }

  std::vector<double> sorted = betas;
  std::sort(sorted.begin(), sorted.end());
  // Demo 0 and the grid mean. Single demos near s = pi/12, where both
  // hypotheses explain the demo equally well, need not converge.
  for (const std::optional<double> demo : {std::optional<double>(0.0), std::optional<double>()}) {
    const std::string where = demo ? "demo 0" : "the demo-grid mean";
    double previous = std::numeric_limits<double>::infinity();
    bool monotone = true;
    std::string trace;
    for (double beta : sorted) {
      const auto* r = find_row(rows, "maximum-vs-beta", "maximum", beta, 0, demo);
      if (r == nullptr) continue;
      if (r->mean_belief_error > previous + kMonotoneSlack) monotone = false;
      previous = r->mean_belief_error;
      trace += (trace.empty() ? "" : ", ") + format_real(beta) + ":" +
               format_real(r->mean_belief_error);
    }
    claims.push_back({"maximum belief error at " + where + " is nonincreasing in beta", monotone,
                      trace});
    if (!sorted.empty() && sorted.back() >= 20.0) {
      claims.push_back({"maximum belief error at " + where + " is below 0.01 at beta=" +
                            format_real(sorted.back()),
                        previous < 0.01, "got " + format_real(previous)});
    }
  }

  if (cfg.sample_sizes.size() >= 2) {
    const std::size_t small = *std::min_element(cfg.sample_sizes.begin(), cfg.sample_sizes.end());
    const std::size_t large = *std::max_element(cfg.sample_sizes.begin(), cfg.sample_sizes.end());
    const auto* a = find_row(rows, "sampling-vs-n", "sample", 1.0, large, std::nullopt);
    const auto* b = find_row(rows, "sampling-vs-n", "sample", 1.0, small, std::nullopt);
    if (a != nullptr && b != nullptr && small != large) {
      claims.push_back({"sampling belief error at N=" + std::to_string(large) + " < at N=" +
                            std::to_string(small),
                        a->mean_belief_error < b->mean_belief_error,
                        compare_detail("large", a->mean_belief_error, "small",
                                       b->mean_belief_error)});
    }
  }
  auto cross = crossover_claims(rows);
  claims.insert(claims.end(), cross.begin(), cross.end());
  return claims;
}

std::vector<Claim> crossover_claims(const std::vector<BeliefRow>& rows) {
  std::vector<Claim> claims;
  std::vector<double> betas;
  for (const auto& r : rows) {
    if (r.sweep == "crossover" &&
        std::find(betas.begin(), betas.end(), r.beta) == betas.end()) {
      betas.push_back(r.beta);
    }
  }
  if (betas.size() < 2) return claims;
  const double low = *std::min_element(betas.begin(), betas.end());
  const double high = *std::max_element(betas.begin(), betas.end());
  auto aggregate = [&](const std::string& strategy, double beta) -> const BeliefRow* {
    for (const auto& r : rows) {
      if (r.sweep == "crossover" && r.strategy == strategy && r.beta == beta && !r.demo) return &r;
    }
    return nullptr;
  };
  const auto* s_low = aggregate("sample", low);
  const auto* m_low = aggregate("maximum", low);
  const auto* s_high = aggregate("sample", high);
  const auto* m_high = aggregate("maximum", high);
  if (s_low && m_low) {
    claims.push_back({"crossover beta=" + format_real(low) + ": sample error < maximum error",
                      s_low->mean_belief_error < m_low->mean_belief_error,
                      compare_detail("sample", s_low->mean_belief_error, "maximum",
                                     m_low->mean_belief_error)});
  }
  if (s_high && m_high) {
    claims.push_back({"crossover beta=" + format_real(high) + ": maximum error < sample error",
                      m_high->mean_belief_error < s_high->mean_belief_error,
                      compare_detail("maximum", m_high->mean_belief_error, "sample",
                                     s_high->mean_belief_error)});
  }
  return claims;
}

// -------------------------------------------------------- teacher studies

std::vector<EvalRecord> evaluate_teachers(const ExperimentConfig& cfg, ExperimentId id) {
  if (id != ExperimentId::SimulationSuite && id != ExperimentId::DependenceStudy) {
    throw ContractViolation("evaluate_teachers runs the simulation suite or dependence study");
  }
  cfg.validate_for(id);
  const auto env = make_environment(cfg.environment, cfg.environment_params);
  const auto betas = cfg.betas_for(id);
  const bool dependence = id == ExperimentId::DependenceStudy;
  const Dependence data_mode = dependence ? Dependence::Dependent : Dependence::Independent;
  std::vector<Dependence> learners = {Dependence::Independent};
  if (dependence) learners.push_back(Dependence::Dependent);

  std::vector<Task> tasks;
  for (std::size_t b = 0; b < betas.size(); ++b) {
    for (std::size_t t = 0; t < cfg.teachers; ++t) {
      for (auto mode : learners) {
        for (auto m : cfg.methods) tasks.push_back({b, t, mode, m});
      }
    }
  }
  std::vector<EvalRecord> records(tasks.size());
  parallel_for(tasks.size(), cfg.workers, [&](std::size_t i) {
    records[i] = run_task(tasks[i], betas[tasks[i].beta_index], cfg, *env, data_mode);
  });
  return records;
}

std::string summary_header() {
  return "environment,method,learner_mode,data_mode,beta,teachers,failures,mean_error,se_error,"
         "mean_regret,se_regret,mean_acceptance";
}

std::string to_csv_row(const SummaryRow& s) {
  return s.environment + ',' + s.method + ',' + to_string(s.learner_mode) + ',' +
         to_string(s.data_mode) + ',' + format_real(s.beta) + ',' + std::to_string(s.teachers) +
         ',' + std::to_string(s.failures) + ',' + format_real(s.mean_error) + ',' +
         format_real(s.se_error) + ',' + format_real(s.mean_regret) + ',' +
         format_real(s.se_regret) + ',' + format_real(s.mean_acceptance);
}

std::vector<SummaryRow> summarize(const std::vector<EvalRecord>& records) {
  struct Group {
    SummaryRow row;
    std::vector<double> errors, regrets, acceptance;
  };
  std::vector<Group> groups;
  for (const auto& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.row.method == r.method && g.row.learner_mode == r.learner_mode &&
             g.row.data_mode == r.data_mode && g.row.beta == r.beta &&
             g.row.environment == r.environment;
    });
    if (it == groups.end()) {
      Group g;
      g.row.environment = r.environment;
      g.row.method = r.method;
      g.row.learner_mode = r.learner_mode;
      g.row.data_mode = r.data_mode;
      g.row.beta = r.beta;
      groups.push_back(std::move(g));
      it = std::prev(groups.end());
    }
    ++it->row.teachers;
    if (!r.ok()) {
      ++it->row.failures;
      continue;
    }
    it->errors.push_back(r.error);
    it->regrets.push_back(r.regret);
    it->acceptance.push_back(r.acceptance_rate);
  }
  std::vector<SummaryRow> out;
  for (auto& g : groups) {
    const auto e = mean_se(g.errors);
    const auto rg = mean_se(g.regrets);
    g.row.mean_error = e.mean;
    g.row.se_error = e.se;
    g.row.mean_regret = rg.mean;
    g.row.se_regret = rg.se;
    g.row.mean_acceptance = mean_se(g.acceptance).mean;
    out.push_back(g.row);
  }
  return out;
}

std::vector<Claim> simulation_suite_claims(const std::vector<SummaryRow>& summary) {
  std::vector<Claim> claims;
  const auto ind = Dependence::Independent;
  for (double beta : summary_betas(summary)) {
    const std::string tag = "beta=" + format_real(beta) + ": ";
    const auto* dmh = find_summary(summary, "double-mh", ind, beta);
    for (const char* other : {"sample", "maximum"}) {
      const auto* o = find_summary(summary, other, ind, beta);
      if (dmh && o) {
        claims.push_back({tag + "double-mh error < " + other + " error",
                          dmh->mean_error < o->mean_error,
                          compare_detail("double-mh", dmh->mean_error, other, o->mean_error)});
      }
    }
    const auto* ign = find_summary(summary, "ignore", ind, beta);
    if (ign) {
      bool worst = true;
      std::string detail = "ignore " + format_real(ign->mean_error);
      for (const char* other : {"sample", "maximum", "double-mh"}) {
        if (const auto* o = find_summary(summary, other, ind, beta)) {
          worst = worst && ign->mean_error > o->mean_error;
          detail += std::string(", ") + other + " " + format_real(o->mean_error);
        }
      }
      claims.push_back({tag + "ignore has the largest error", worst, detail});
    }
  }
  return claims;
}

std::vector<Claim> dependence_study_claims(const std::vector<SummaryRow>& summary) {
  std::vector<Claim> claims;
  for (double beta : summary_betas(summary)) {
    const std::string tag = "beta=" + format_real(beta) + ": ";
    const auto* best = find_summary(summary, "double-mh", Dependence::Dependent, beta);
    if (best == nullptr) continue;
    for (bool use_regret : {false, true}) {
      const char* metric = use_regret ? "regret" : "error";
      auto value = [&](const SummaryRow& s) { return use_regret ? s.mean_regret : s.mean_error; };
      bool lowest = true;
      std::string detail = "dependent double-mh " + format_real(value(*best));
      for (const char* m : {"ignore", "sample", "maximum", "double-mh"}) {
        for (auto mode : {Dependence::Independent, Dependence::Dependent}) {
          const auto* s = find_summary(summary, m, mode, beta);
          if (s == nullptr || s == best) continue;
          lowest = lowest && value(*best) < value(*s);
          detail += ", " + to_string(mode) + " " + m + " " + format_real(value(*s));
        }
      }
      claims.push_back({tag + "dependent double-mh has the lowest mean " + metric, lowest, detail});
    }
    if (const auto* ind = find_summary(summary, "double-mh", Dependence::Independent, beta)) {
      claims.push_back({tag + "double-mh error: dependent learner <= independent learner",
                        best->mean_error <= ind->mean_error,
                        compare_detail("dependent", best->mean_error, "independent",
                                       ind->mean_error)});
    }
  }
  return claims;
}

RuntimeReport runtime_report(const std::vector<EvalRecord>& records) {
  RuntimeReport report;
  std::vector<std::string> order;
  std::map<std::string, std::pair<double, std::size_t>> totals;
  for (const auto& r : records) {
    if (!r.ok() || r.iterations == 0) continue;
    if (!totals.contains(r.method)) order.push_back(r.method);
    auto& [seconds, iterations] = totals[r.method];
    seconds += r.seconds;
    iterations += r.iterations;
  }
  double baseline = 0.0;
  std::size_t baselines = 0;
  for (const auto& m : order) {
    const auto& [seconds, iterations] = totals[m];
    const double per = seconds / static_cast<double>(iterations);
    report.seconds_per_iteration.emplace_back(m, per);
    if (m == "ignore" || m == "sample" || m == "maximum") {
      baseline += per;
      ++baselines;
    }
  }
  if (totals.contains("double-mh") && baselines > 0 && baseline > 0.0) {
    const auto& [seconds, iterations] = totals["double-mh"];
    report.double_mh_ratio =
        seconds / static_cast<double>(iterations) / (baseline / static_cast<double>(baselines));
  }
  return report;
}

void write_runtime_report(const RuntimeReport& report, std::ostream& out) {
  out << "seconds per outer iteration\n";
  for (const auto& [method, seconds] : report.seconds_per_iteration) {
    out << "  " << method << ' ' << format_real(seconds) << '\n';
  }
  if (report.double_mh_ratio) {
    out << "double-mh / mean baseline: " << format_real(*report.double_mh_ratio) << '\n';
  }
}

// ------------------------------------------------------------ entry points

ExperimentReport run_working_example(const ExperimentConfig& cfg) {
  cfg.validate_for(ExperimentId::WorkingExample);
  ExperimentReport report{ExperimentId::WorkingExample, {}, {}};
  const auto rows = working_example_rows(cfg);
  ensure_directory(cfg.out);
  const auto path = cfg.out / "working_example.csv";
  auto out = open_output(path);
  out << belief_row_header() << '\n';
  for (const auto& r : rows) out << to_csv_row(r) << '\n';
  close_output(out, path);
  report.files = {path};
  report.claims = working_example_claims(rows, cfg);
  return report;
}

ExperimentReport run_crossover(const ExperimentConfig& cfg) {
  cfg.validate_for(ExperimentId::Crossover);
  ExperimentReport report{ExperimentId::Crossover, {}, {}};
  const auto rows = crossover_rows(cfg);
  ensure_directory(cfg.out);
  const auto path = cfg.out / "crossover.csv";
  auto out = open_output(path);
  out << belief_row_header() << '\n';
  for (const auto& r : rows) out << to_csv_row(r) << '\n';
  close_output(out, path);
  report.files = {path};
  report.claims = crossover_claims(rows);
  return report;
}

ExperimentReport run_simulation_suite(const ExperimentConfig& cfg, std::ostream* log) {
  ExperimentReport report{ExperimentId::SimulationSuite, {}, {}};
  const auto records = evaluate_teachers(cfg, ExperimentId::SimulationSuite);
  const auto summary = summarize(records);
  write_teacher_outputs(records, summary, cfg, report, log);
  report.claims = simulation_suite_claims(summary);
  return report;
}

ExperimentReport run_dependence_study(const ExperimentConfig& cfg, std::ostream* log) {
  ExperimentReport report{ExperimentId::DependenceStudy, {}, {}};
  const auto records = evaluate_teachers(cfg, ExperimentId::DependenceStudy);
  const auto summary = summarize(records);
  write_teacher_outputs(records, summary, cfg, report, log);
  report.claims = dependence_study_claims(summary);
  return report;
}

ExperimentReport run_experiment(ExperimentId id, const ExperimentConfig& cfg, std::ostream* log) {
  switch (id) {
    case ExperimentId::WorkingExample: return run_working_example(cfg);
    case ExperimentId::Crossover: return run_crossover(cfg);
    case ExperimentId::SimulationSuite: return run_simulation_suite(cfg, log);
    case ExperimentId::DependenceStudy: return run_dependence_study(cfg, log);
  }
  throw ContractViolation("unknown experiment id");
}

}  // namespace birl
