#include "birl/environments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>

namespace birl {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kArgumentTolerance = 1e-8;
constexpr std::size_t kMultiAxisGridCap = 200;

Trajectory constant_trajectory(std::size_t horizon, Vector state) {
  Vector flat;
  flat.reserve(horizon * state.size());
  for (std::size_t t = 0; t < horizon; ++t) flat.insert(flat.end(), state.begin(), state.end());
  return Trajectory(state.size(), std::move(flat));
}

double wrap(double x, double lo, double width) {
  double y = std::fmod(x - lo, width);
  if (y < 0.0) y += width;
  return lo + y;
}

// Golden-section maximization of a unimodal f on [a, b].
double golden_maximize(const std::function<double(double)>& f, double a, double b) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > kArgumentTolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> axis_points(double lo, double hi, std::size_t n, bool periodic) {
  std::vector<double> pts(n);
  if (hi == lo) {
    std::fill(pts.begin(), pts.end(), lo);
    return pts;
  }
  const double step = periodic ? (hi - lo) / static_cast<double>(n)
                               : (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) pts[k] = lo + step * static_cast<double>(k);
  return pts;
}

// Grid argmax then golden refinement inside the neighbouring grid cells.
double maximize_axis(const std::function<double(double)>& f, double lo, double hi, std::size_t n,
                     bool periodic) {
  if (hi == lo) return lo;
  const auto pts = axis_points(lo, hi, n, periodic);
  std::size_t best = 0;
  double best_value = f(pts[0]);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double v = f(pts[k]);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double step = pts.size() > 1 ? pts[1] - pts[0] : 0.0;
  double a = pts[best] - step;
  double b = pts[best] + step;
  if (!periodic) {
    a = std::max(a, lo);
    b = std::min(b, hi);
  }
  auto wrapped = [&](double x) { return periodic ? wrap(x, lo, hi - lo) : x; };
  const double refined = wrapped(golden_maximize([&](double x) { return f(wrapped(x)); }, a, b));
  return f(refined) >= best_value ? refined : pts[best];
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size() || v < 0) throw std::invalid_argument(value);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("environment parameter '" + key + "' expects a nonnegative integer, got '" +
                      value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("environment parameter '" + key + "' expects a number, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("environment parameter '" + key + "' expects true/false, got '" + value + "'");
}

void reject_unknown(const std::string& env, const std::map<std::string, std::string>& params,
                    const std::set<std::string>& known) {
  for (const auto& [key, value] : params) {
    if (!known.contains(key)) {
      std::string list;
      for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError("unknown parameter '" + key + "' for environment '" + env +
                        "' (expected one of: " + list + ")");
    }
  }
}

EnvironmentShape cup_shape(std::size_t grid) {
  EnvironmentShape shape;
  shape.name = "cup";
  shape.bounds = {{0.0}, {kHalfPi}, {false}};
  shape.horizon = 1;
  shape.feature_dim = 2;
  shape.grid_resolution = grid;
  shape.theta_domain = ThetaDomain::PositiveOrthant;
  shape.initial = Trajectory::from_scalars(std::vector<double>{kHalfPi / 2.0});
  shape.dynamics = "cup angle is set directly";
  return shape;
}

EnvironmentShape path_shape(const PathOptions& o) {
  if (o.waypoints == 0) throw ConfigError("path environment needs at least one waypoint");
  if (!(o.initial_position >= 0.0 && o.initial_position <= 1.0)) {
    throw ConfigError("path environment initial position must lie in [0, 1]");
  }
  if (!(o.initial_height >= 0.0 && o.initial_height <= 1.0)) {
    throw ConfigError("path environment initial height must lie in [0, 1]");
  }
  EnvironmentShape shape;
  shape.name = "path";
  const std::size_t dim = o.with_height ? 2 : 1;
  shape.bounds = {Vector(dim, 0.0), Vector(dim, 1.0), std::vector<bool>(dim, false)};
  shape.horizon = o.waypoints;
  shape.feature_dim = 2;
  shape.grid_resolution = o.grid_resolution;
  shape.theta_domain = ThetaDomain::PositiveOrthant;
  shape.correction_penalty = o.correction_penalty;
  Vector start(dim, o.initial_position);
  if (o.with_height) start[1] = o.initial_height;
  shape.initial = constant_trajectory(o.waypoints, start);
  shape.dynamics = "waypoints are free (identity dynamics)";
  return shape;
}

EnvironmentShape sphere_shape(double radius, std::size_t grid) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("sphere environment radius must be positive");
  }
  EnvironmentShape shape;
  shape.name = "sphere";
  shape.bounds = {{0.0}, {2.0 * std::numbers::pi}, {true}};
  shape.horizon = 1;
  shape.feature_dim = 2;
  shape.grid_resolution = grid;
  shape.theta_domain = ThetaDomain::Sphere;
  shape.initial = Trajectory::from_scalars(std::vector<double>{0.0});
  shape.dynamics = "trajectory indexed by its feature angle";
  return shape;
}

}  // namespace

// ---------------------------------------------------------------- CupEnv

CupEnv::CupEnv(std::size_t grid_resolution) : Environment(cup_shape(grid_resolution)) {}

double CupEnv::reward(double s, double angle) {
  return -5.0 * std::cos(angle) * (s + 1.0) - std::sin(angle) * (kHalfPi - s);
}

std::vector<Vector> CupEnv::hypotheses() const { return {{1.0, 0.0}, {0.0, 1.0}}; }

void CupEnv::state_features(State s, std::span<double> out) const {
  coordinate_features(0, s[0], out);
}

void CupEnv::coordinate_features(std::size_t, double x, std::span<double> out) const {
  out[0] = -5.0 * (x + 1.0);
  out[1] = -(kHalfPi - x);
}

// --------------------------------------------------------------- PathEnv

PathEnv::PathEnv(PathOptions options) : Environment(path_shape(options)), options_(options) {}

void PathEnv::state_features(State s, std::span<double> out) const {
  const double inv_t = 1.0 / static_cast<double>(options_.waypoints);
  const double gap = 1.0 - s[0];
  out[0] = options_.with_height ? -inv_t * (1.0 + s[0] + s[1]) / 3.0 : -inv_t * (1.0 + s[0]) / 2.0;
  out[1] = -inv_t * gap * gap;
}

void PathEnv::coordinate_features(std::size_t coord, double x, std::span<double> out) const {
  const double inv_t = 1.0 / static_cast<double>(options_.waypoints);
  std::fill(out.begin(), out.end(), 0.0);
  // The constant part of travel is carried by coordinate 0.
  const double share = options_.with_height ? 1.0 / 3.0 : 0.5;
  if (coord == 0) {
    out[0] = -inv_t * share * (1.0 + x);
    out[1] = -inv_t * (1.0 - x) * (1.0 - x);
  } else {
    out[0] = -inv_t * share * x;
  }
}

// ------------------------------------------------------------- SphereEnv

SphereEnv::SphereEnv(double radius, std::size_t grid_resolution)
    : Environment(sphere_shape(radius, grid_resolution)), radius_(radius) {}

void SphereEnv::state_features(State s, std::span<double> out) const {
  coordinate_features(0, s[0], out);
}

void SphereEnv::coordinate_features(std::size_t, double x, std::span<double> out) const {
  out[0] = radius_ * std::cos(x);
  out[1] = radius_ * std::sin(x);
}

// --------------------------------------------------------------- factory

EnvironmentPtr make_environment(const std::string& name,
                                const std::map<std::string, std::string>& params) {
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
  };
  if (name == "cup") {
    reject_unknown(name, params, {"grid"});
    const auto* grid = get("grid");
    return std::make_shared<CupEnv>(grid ? parse_size("grid", *grid) : 10000);
  }
  if (name == "path") {
    reject_unknown(name, params, {"grid", "height", "initial", "initial_height", "penalty", "waypoints"});
    PathOptions o;
    if (const auto* v = get("waypoints")) o.waypoints = parse_size("waypoints", *v);
    if (const auto* v = get("height")) o.with_height = parse_bool("height", *v);
    if (const auto* v = get("initial")) o.initial_position = parse_real("initial", *v);
    if (const auto* v = get("initial_height")) {
      o.initial_height = parse_real("initial_height", *v);
    }
    if (const auto* v = get("penalty")) o.correction_penalty = parse_real("penalty", *v);
    if (const auto* v = get("grid")) o.grid_resolution = parse_size("grid", *v);
    return std::make_shared<PathEnv>(o);
  }
  if (name == "sphere") {
    reject_unknown(name, params, {"grid", "radius"});
    const auto* radius = get("radius");
    const auto* grid = get("grid");
    return std::make_shared<SphereEnv>(radius ? parse_real("radius", *radius) : 1.0,
                                       grid ? parse_size("grid", *grid) : 10000);
  }
  throw ConfigError("unknown environment '" + name + "' (expected cup, path or sphere)");
}

// -------------------------------------------------------------- samplers

double fold_into_bounds(double x, const Bounds& bounds, std::size_t coord) {
  const double lo = bounds.lower[coord];
  const double width = bounds.width(coord);
  if (width == 0.0) return lo;
  if (bounds.periodic[coord]) return wrap(x, lo, width);
  double y = std::fmod(x - lo, 2.0 * width);
  if (y < 0.0) y += 2.0 * width;
  if (y > width) y = 2.0 * width - y;
  return lo + y;
}

Trajectory sample_uniform_trajectory(const Environment& env, Rng& rng) {
  const auto& b = env.bounds();
  Vector flat(env.horizon() * env.state_dim());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const std::size_t c = i % env.state_dim();
    flat[i] = b.lower[c] + b.width(c) * uniform01(rng);
    if (b.periodic[c] && flat[i] >= b.upper[c]) flat[i] = b.lower[c];
  }
  return Trajectory(env.state_dim(), std::move(flat));
}

Trajectory perturb_trajectory(const Trajectory& xi, double scale, const Environment& env, Rng& rng) {
  Trajectory out = xi;
  if (scale == 0.0) return out;
  const auto& b = env.bounds();
  auto flat = out.flat_mutable();
  const std::size_t dim = xi.state_dim();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const std::size_t c = i % dim;
    flat[i] = fold_into_bounds(flat[i] + scale * b.width(c) * standard_normal(rng), b, c);
  }
  return out;
}

Dataset sample_dependent_dataset(const Environment& env, const Trajectory& initial, std::size_t K,
                                 double half_width, Rng& rng) {
  if (K == 0) throw ContractViolation("a dependent dataset needs at least one correction");
  if (!(half_width >= 0.0)) throw ContractViolation("perturbation half-width must be >= 0");
  const auto& b = env.bounds();
  const std::size_t dim = initial.state_dim();
  std::vector<Trajectory> corrections;
  corrections.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    Trajectory xi = initial;
    auto flat = xi.flat_mutable();
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const std::size_t c = i % dim;
      const double hw = b.width(c) == 0.0 ? 0.0 : half_width * b.width(c);
      const double lo = std::max(b.lower[c], flat[i] - hw);
      const double hi = std::min(b.upper[c], flat[i] + hw);
      flat[i] = lo + (hi - lo) * uniform01(rng);
    }
    corrections.push_back(std::move(xi));
  }
  return Dataset::dependent(initial, std::move(corrections));
}

// ---------------------------------------------------------------- argmax

Vector optimal_state(const RewardParams& theta, const Environment& env) {
  if (theta.dimension() != env.feature_dim()) {
    throw ContractViolation("reward parameter dimension does not match the environment");
  }
  const auto& b = env.bounds();
  const std::size_t dim = env.state_dim();
  Vector best(dim);
  Vector phi(env.feature_dim());

  if (env.coordinate_separable()) {
    for (std::size_t c = 0; c < dim; ++c) {
      auto f = [&](double x) {
        env.coordinate_features(c, x, phi);
        return dot(theta.values(), phi);
      };
      best[c] = maximize_axis(f, b.lower[c], b.upper[c], env.grid_resolution(), b.periodic[c]);
    }
    return best;
  }

  const std::size_t n = dim == 1 ? env.grid_resolution()
                                 : std::min(env.grid_resolution(), kMultiAxisGridCap);
  std::vector<std::vector<double>> axes;
  for (std::size_t c = 0; c < dim; ++c) {
    axes.push_back(axis_points(b.lower[c], b.upper[c], n, b.periodic[c]));
  }
  auto value_at = [&](const Vector& s) {
    env.state_features(s, phi);
    return dot(theta.values(), phi);
  };
  std::vector<std::size_t> idx(dim, 0);
  Vector s(dim);
  double best_value = -std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t c = 0; c < dim; ++c) s[c] = axes[c][idx[c]];
    const double v = value_at(s);
    if (v > best_value) {
      best_value = v;
      best = s;
    }
    std::size_t c = 0;
    while (c < dim && ++idx[c] == n) idx[c++] = 0;
    if (c == dim) break;
  }
  // Coordinate-wise refinement around the grid optimum.
  for (int cycle = 0; cycle < 50; ++cycle) {
    double moved = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      Vector trial = best;
      auto f = [&](double x) {
        trial[c] = x;
        return value_at(trial);
      };
      const double step = axes[c].size() > 1 ? axes[c][1] - axes[c][0] : 0.0;
      const double x = maximize_axis(f, std::max(b.lower[c], best[c] - step),
                                     std::min(b.upper[c], best[c] + step), 3, false);
      trial[c] = x;
      const double v = value_at(trial);
      if (v >= best_value) {
        moved = std::max(moved, std::abs(x - best[c]));
        best_value = v;
        best[c] = x;
      }
    }
    if (moved < kArgumentTolerance) break;
  }
  return best;
}

Trajectory optimal_trajectory(const RewardParams& theta, const Environment& env) {
  return constant_trajectory(env.horizon(), optimal_state(theta, env));
}

}  // namespace birl
