#include "adhesion/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "adhesion/errors.hpp"

namespace adhesion {

namespace {

constexpr double kPi = std::numbers::pi;

std::string at_x(double x) {
  std::ostringstream os;
  os << "x=" << x;
  return os.str();
}

bool integral_ratio(double num, double den, double rel_tol, long& out) {
  const double q = num / den;
  const double r = std::round(q);
  out = static_cast<long>(r);
  return std::abs(q - r) <= rel_tol * std::max(1.0, std::abs(q));
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::weak: return "weak";
    case Mode::weak_with_source: return "weak_with_source";
    case Mode::coupled: return "coupled";
    case Mode::limit: return "limit";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& name) {
  if (name == "weak") return Mode::weak;
  if (name == "weak_with_source" || name == "weak_source") return Mode::weak_with_source;
  if (name == "coupled") return Mode::coupled;
  if (name == "limit") return Mode::limit;
  throw ConfigError("unknown mode '" + name + "'");
}

double DensitySpec::value(double /*x*/, double a) const {
  switch (kind) {
    case Kind::exp_decay: return amplitude * std::exp(-rate * a);
    case Kind::constant: return amplitude;
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

double PastData::value(double x, double t) const {
  if (kind == Kind::zero) return 0.0;
  return amplitude * std::sin(kPi * x) / kPi * (1.0 + time_slope * t);
}

double PastData::lipschitz(double x) const {
  if (kind == Kind::zero) return 0.0;
  return std::abs(amplitude * time_slope) * std::sin(kPi * x) / kPi;
}

double SourceModel::at(double x, double t) const {
  if (!present) return 0.0;
  const double s = shape == Shape::uniform ? 1.0 : kPi * kPi * std::sin(kPi * x);
  return (value + rate * t) * s;
}

double SourceModel::dt_at(double x, double /*t*/) const {
  if (!present) return 0.0;
  const double s = shape == Shape::uniform ? 1.0 : kPi * kPi * std::sin(kPi * x);
  return rate * s;
}

double RateModel::zeta_given(double x, double a, double /*t*/) const {
  return zeta0 * (1.0 + zeta_age_amp * a / (1.0 + a)) * (1.0 + zeta_x_amp * std::sin(kPi * x));
}

double RateModel::zeta_of_u(double u) const { return zeta0 + zeta_lip * std::abs(u); }

double RateModel::beta_given(double x, double /*t*/) const {
  return beta0 * (1.0 + beta_x_amp * std::sin(kPi * x));
}

double RateModel::beta_threshold(double z) const {
  return (z > 0.0 && z < threshold) ? beta0 : 0.0;
}

double RateModel::zeta_min() const {
  if (zeta_kind == ZetaKind::lipschitz_of_u) return zeta0;
  return zeta0 * std::min(1.0, 1.0 + zeta_age_amp) * std::min(1.0, 1.0 + zeta_x_amp);
}

double RateModel::zeta_max() const {
  if (zeta_kind == ZetaKind::lipschitz_of_u) return HUGE_VAL;
  return zeta0 * std::max(1.0, 1.0 + zeta_age_amp) * std::max(1.0, 1.0 + zeta_x_amp);
}

double RateModel::beta_min() const {
  if (beta_kind == BetaKind::threshold_on_z) return 0.0;
  return beta0 * std::min(1.0, 1.0 + beta_x_amp);
}

double RateModel::beta_max() const {
  if (beta_kind == BetaKind::threshold_on_z) return beta0;
  return beta0 * std::max(1.0, 1.0 + beta_x_amp);
}

std::vector<double> SpaceGrid::nodes() const {
  std::vector<double> out(static_cast<std::size_t>(nx) + 2);
  for (int i = 0; i <= nx + 1; ++i) out[static_cast<std::size_t>(i)] = node(i);
  out.back() = 1.0;
  return out;
}

SpaceGrid make_space_grid(int nx) {
  if (nx < 1) throw ConfigError("nx must be at least 1");
  return SpaceGrid{nx, 1.0 / (nx + 1)};
}

AgeGrid make_age_grid(double da, double a_max) {
  long na = 0;
  if (!(da > 0.0) || !(a_max > 0.0) || !integral_ratio(a_max, da, 1e-9, na) || na < 1) {
    throw ConfigError("a_max / da must be a positive integer");
  }
  AgeGrid grid;
  grid.na = static_cast<int>(na);
  grid.da = da;
  grid.weights.assign(static_cast<std::size_t>(na) + 1, da);
  grid.weights.front() = 0.5 * da;
  grid.weights.back() = 0.5 * da;
  return grid;
}

double trapezoid(const AgeGrid& grid, std::span<const double> values) {
  double sum = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) sum += grid.weights[j] * values[j];
  return sum;
}

std::vector<double> sample_density(const DensitySpec& spec, const SpaceGrid& space, const AgeGrid& age) {
  const std::size_t cols = static_cast<std::size_t>(age.size());
  std::vector<double> out(static_cast<std::size_t>(space.nx) * cols);
  for (int i = 0; i < space.nx; ++i) {
    for (int j = 0; j <= age.na; ++j) {
      out[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)] = spec.value(space.interior(i), age.a(j));
    }
  }
  return out;
}

Field sample_source(const SourceModel& source, const SpaceGrid& space, double t) {
  if (!source.present) return {};
  Field out(static_cast<std::size_t>(space.nx));
  for (int i = 0; i < space.nx; ++i) out[static_cast<std::size_t>(i)] = source.at(space.interior(i), t);
  return out;
}

Field sample_source_rate(const SourceModel& source, const SpaceGrid& space, double t) {
  if (!source.present) return {};
  Field out(static_cast<std::size_t>(space.nx));
  for (int i = 0; i < space.nx; ++i) out[static_cast<std::size_t>(i)] = source.dt_at(space.interior(i), t);
  return out;
}

ValidationReport check_config(const SimulationConfig& c) {
  ValidationReport rep;
  auto fail = [&](std::string name, std::string where) { rep.violations.push_back({std::move(name), std::move(where)}); };

  if (!(c.epsilon > 0.0)) fail("epsilon positive", "epsilon");
  if (!(c.final_time > 0.0)) fail("final time positive", "final_time");
  if (c.nx < 1) fail("space grid size", "nx");
  if (c.cadence < 1) fail("output cadence", "cadence");
  if (c.truncation_k < 0.0) fail("truncation threshold", "truncation_k");

  long na = 0;
  const bool age_ok = c.da > 0.0 && c.a_max > 0.0 && integral_ratio(c.a_max, c.da, 1e-9, na) && na >= 1;
  if (!age_ok) fail("age grid alignment", "a_max/da");

  if (c.epsilon > 0.0 && c.da > 0.0 && c.final_time > 0.0) {
    long steps = 0;
    if (!integral_ratio(c.final_time, c.epsilon * c.da, 1e-6, steps) || steps < 1) {
      fail("time grid alignment", "final_time/(epsilon*da)");
    }
  }
  if (!rep.ok()) return rep;

  const bool coupled = c.mode == Mode::coupled;
  const RateModel& r = c.rates;

  if (r.zeta_kind == RateModel::ZetaKind::lipschitz_of_u) {
    if (!coupled) fail("off-rate kind", "lipschitz-of-u off-rate requires coupled mode");
    if (!(r.zeta0 > 0.0)) fail("off-rate lower bound", "zeta(0)");
    if (r.zeta_lip < 0.0) fail("off-rate Lipschitz constant", "zeta_lip");
  } else {
    if (r.zeta_age_amp <= -1.0 || r.zeta_x_amp <= -1.0 || !(r.zeta_min() > 0.0)) {
      fail("off-rate lower bound", "zeta_m");
    }
    if (!std::isfinite(r.zeta_max())) fail("off-rate upper bound", "zeta_M");
  }

  if (r.beta_kind == RateModel::BetaKind::threshold_on_z) {
    if (!coupled) fail("on-rate kind", "threshold on-rate requires coupled mode");
    if (r.beta0 < 0.0) fail("on-rate bounds", "beta0");
    if (!(r.threshold > 0.0)) fail("on-rate threshold", "threshold");
    if (coupled) rep.warnings.push_back("threshold on-rate: beta_m = 0, no-extinction hypothesis not assumed");
  } else {
    if (r.beta_min() < 0.0 || r.beta_x_amp < -1.0) fail("on-rate bounds", "beta >= 0");
    if (!std::isfinite(r.beta_max())) fail("on-rate bounds", "beta_M");
    if (!(r.beta_min() > 0.0)) {
      if (coupled) {
        rep.warnings.push_back("beta_m = 0: no-extinction hypothesis not assumed");
      } else {
        fail("on-rate lower bound", "beta_m");
      }
    }
  }

  // Initial density on the truncated grid.
  const SpaceGrid space = make_space_grid(c.nx);
  const AgeGrid age = make_age_grid(c.da, c.a_max);
  std::vector<double> col(static_cast<std::size_t>(age.size()));
  std::vector<double> m1(col.size());
  std::vector<double> m2(col.size());
  bool any_zero_mass = false;
  for (int i = 0; i < space.nx; ++i) {
    const double x = space.interior(i);
    bool positive = true;
    for (int j = 0; j <= age.na; ++j) {
      const double v = c.initial_density.value(x, age.a(j));
      const auto k = static_cast<std::size_t>(j);
      col[k] = v;
      m1[k] = age.a(j) * v;
      m2[k] = age.a(j) * age.a(j) * v;
      if (!(v >= 0.0) || !std::isfinite(v)) positive = false;
    }
    if (!positive) {
      fail("positivity and boundedness", at_x(x));
      continue;
    }
    const double mass = trapezoid(age, col);
    if (!(mass < 1.0)) fail("total initial population", at_x(x));
    if (mass == 0.0) any_zero_mass = true;
    if (!std::isfinite(trapezoid(age, m1)) || !std::isfinite(trapezoid(age, m2))) {
      fail("boundedness of higher moments", at_x(x));
    }
  }
  if (any_zero_mass) rep.warnings.push_back("initial population vanishes at some nodes");

  // Past data: Lipschitz in time on sampled points.
  for (int i = 0; i < space.nx; i += std::max(1, space.nx / 8)) {
    const double x = space.interior(i);
    const double C = c.past.lipschitz(x);
    for (int k = 1; k <= 8; ++k) {
      const double t1 = -c.epsilon * c.a_max * k / 8.0;
      const double t2 = t1 + c.epsilon * c.a_max / 16.0;
      if (std::abs(c.past.value(x, t2) - c.past.value(x, t1)) > C * std::abs(t2 - t1) + 1e-12) {
        fail("past data Lipschitz", at_x(x));
        break;
      }
    }
  }

  if (c.source.present) {
    if (c.mode == Mode::weak) rep.warnings.push_back("source term ignored in weak mode");
    const double h = 1e-6 * std::max(1.0, c.final_time);
    for (double t : {0.0, 0.5 * c.final_time}) {
      const double fd = (c.source.at(0.5, t + h) - c.source.at(0.5, t)) / h;
      const double d = c.source.dt_at(0.5, t);
      if (std::abs(fd - d) > 1e-5 * (1.0 + std::abs(d) + std::abs(c.source.at(0.5, t)))) {
        fail("source time derivative", "t=" + std::to_string(t));
      }
    }
  } else if (c.mode == Mode::weak_with_source) {
    rep.warnings.push_back("weak_with_source mode without a source: S = 0");
  }

  return rep;
}

ValidatedConfig validate_config(const SimulationConfig& config) {
  ValidationReport rep = check_config(config);
  if (!rep.ok()) {
    std::string all;
    for (const auto& v : rep.violations) all += (all.empty() ? "" : "; ") + v.name + " @ " + v.location;
    throw HypothesisViolation(rep.violations.front().name, all);
  }
  ValidatedConfig out;
  out.config = config;
  out.dt = config.epsilon * config.da;
  out.steps = std::lround(config.final_time / out.dt);
  out.na = static_cast<int>(std::lround(config.a_max / config.da));
  out.warnings = std::move(rep.warnings);
  return out;
}

Grids build_grids(const ValidatedConfig& config) {
  Grids g;
  g.space = make_space_grid(config.config.nx);
  g.age = make_age_grid(config.config.da, config.config.a_max);
  g.time.dt = config.dt;
  g.time.steps = config.steps;
  g.time.history_depth = g.age.na + 1;
  return g;
}

}  // namespace adhesion
