#include "adhesion/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "adhesion/config_io.hpp"
#include "adhesion/delay_position.hpp"
#include "adhesion/elliptic1d.hpp"
#include "adhesion/errors.hpp"
#include "adhesion/kinetics.hpp"
#include "adhesion/limit_heat.hpp"
#include "adhesion/output.hpp"

namespace adhesion {

std::string to_string(Preset preset) {
  switch (preset) {
    case Preset::weak: return "weak";
    case Preset::weak_source: return "weak_source";
    case Preset::limit: return "limit";
    case Preset::coupled: return "coupled";
    case Preset::convergence_sweep: return "convergence_sweep";
    case Preset::detachment: return "detachment";
  }
  return "unknown";
}

Preset preset_from_string(const std::string& name) {
  if (name == "weak") return Preset::weak;
  if (name == "weak_source") return Preset::weak_source;
  if (name == "limit") return Preset::limit;
  if (name == "coupled") return Preset::coupled;
  if (name == "convergence_sweep") return Preset::convergence_sweep;
  if (name == "detachment") return Preset::detachment;
  throw ConfigError("unknown preset '" + name + "'");
}

SimulationConfig preset_config(Preset preset) {
  SimulationConfig c;
  c.epsilon = 0.05;
  c.final_time = 0.5;
  c.nx = 64;
  c.da = 0.01;
  c.a_max = 10.0;
  c.rates.zeta0 = 1.0;
  c.rates.beta0 = 1.0;
  c.past = PastData{};
  c.initial_density = DensitySpec{DensitySpec::Kind::exp_decay, 0.5, 1.0};
  c.cadence = 10;
  switch (preset) {
    case Preset::weak:
      c.mode = Mode::weak;
      break;
    case Preset::weak_source:
      c.mode = Mode::weak_with_source;
      c.source = SourceModel{true, SourceModel::Shape::sin_pi, 1.0, 0.0};
      break;
    case Preset::limit:
      c.mode = Mode::limit;
      break;
    case Preset::convergence_sweep:
      c.mode = Mode::weak;
      c.cadence = 5;
      break;
    case Preset::coupled:
      c.mode = Mode::coupled;
      c.epsilon = 0.01;
      c.final_time = 0.1;
      c.initial_density = DensitySpec{DensitySpec::Kind::exp_decay, 1.0, 1.0};
      c.rates.zeta_kind = RateModel::ZetaKind::lipschitz_of_u;
      c.rates.zeta_lip = 1.0;
      c.source = SourceModel{true, SourceModel::Shape::uniform, 10.0, 0.0};
      break;
    case Preset::detachment:
      c.mode = Mode::coupled;
      c.epsilon = 1e-3;
      c.final_time = 1e-2;
      c.nx = 128;
      c.initial_density = DensitySpec{DensitySpec::Kind::exp_decay, 1.0, 1.0};
      c.rates.zeta_kind = RateModel::ZetaKind::lipschitz_of_u;
      c.rates.zeta0 = 1.0;
      c.rates.zeta_lip = 1.0;
      c.rates.beta_kind = RateModel::BetaKind::threshold_on_z;
      c.rates.beta0 = 1.0;
      c.rates.threshold = 1000.0;
      c.source = SourceModel{true, SourceModel::Shape::uniform, 1e4, 0.0};
      c.report_times = {1e-4, 2e-4, 3e-4};
      c.cadence = 10;
      break;
  }
  return c;
}

namespace {

int effective_cadence(const SimulationConfig& c, const RunOptions& o) {
  const int cadence = o.cadence > 0 ? o.cadence : c.cadence;
  if (cadence < 1) throw ConfigError("cadence must be positive");
  return cadence;
}

std::uint64_t effective_seed(const SimulationConfig& c, const RunOptions& o) { return o.seed ? *o.seed : c.seed; }

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

void min_max(std::span<const double> f, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (double v : f) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
}

void write_run_info(const std::filesystem::path& dir, const std::string& preset, const SimulationConfig& c,
                    std::uint64_t seed, const RunReport& report) {
  std::ostringstream os;
  os << "preset: " << preset << "\nseed: " << seed << "\nexit_code: " << report.exit_code() << "\n";
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  for (const auto& v : report.violations) os << "violation: " << v << "\n";
  write_text(dir / "run_info.txt", os.str());
  write_text(dir / "config_used.yaml", dump_config(c));
}

// Energy of the candidate z at `level` (delayed values from hist), written
// out so the minimization check can perturb z without touching the history.
double candidate_energy(const PositionHistory& hist, long level, const DensityField& rho, std::span<const double> z,
                        std::span<const double> source, double epsilon, const SpaceGrid& space,
                        const AgeGrid& age) {
  double delay = 0.0;
  for (int j = 1; j <= age.na; ++j) {
    const auto past = hist.at_level(level - j);
    const double w = age.weights[static_cast<std::size_t>(j)];
    for (int i = 0; i < space.nx; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double d = z[k] - past[k];
      delay += w * rho.rho(i, j) * d * d;
    }
  }
  double work = 0.0;
  if (!source.empty()) {
    for (std::size_t k = 0; k < z.size(); ++k) work += source[k] * z[k];
  }
  return gradient_energy(z, space) + space.dx * (0.5 * delay / epsilon - work);
}

std::vector<long> sample_levels(long steps, const SimulationConfig& c, int cadence) {
  std::vector<long> levels;
  for (long n = 0; n <= steps; n += cadence) levels.push_back(n);
  if (levels.back() != steps) levels.push_back(steps);
  (void)c;
  return levels;
}

double limit_field_sum(std::span<const double> f, double dx) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * dx;
}

}  // namespace

WeakRunResult run_weak(const SimulationConfig& config, const RunOptions& options) {
  if (config.mode != Mode::weak && config.mode != Mode::weak_with_source) {
    throw ConfigError("run_weak needs mode weak or weak_with_source");
  }
  const ValidatedConfig vc = validate_config(config);
  const Grids grids = build_grids(vc);
  const SpaceGrid& space = grids.space;
  const AgeGrid& age = grids.age;
  const double eps = config.epsilon;
  const double dt = vc.dt;
  const long steps = vc.steps;
  const int cadence = effective_cadence(config, options);
  const bool with_source = config.mode == Mode::weak_with_source && config.source.present;
  const RateModel& rates = config.rates;

  WeakRunResult res;
  res.report.warnings = vc.warnings;

  DensityField rho = init_density(config.initial_density, space, age, &res.report.warnings);
  const Field S0 = with_source ? sample_source(config.source, space, 0.0) : Field{};
  PositionHistory hist(space, age, config.past, dt);
  hist.push(initial_position(rho, config.past, S0, eps, space, age));

  res.trajectory.x = space.nodes();
  res.mu0_initial = moment(rho, 0, age);
  res.mu0_lowest = res.mu0_initial;

  const bool check_energy = !with_source || config.source.rate == 0.0;
  const double beta_m = rates.beta_min();
  const double lower_floor = beta_m > 0.0 ? beta_m / (beta_m + rates.zeta_max()) : 0.0;

  std::vector<long> minimization_levels;
  std::mt19937_64 rng(effective_seed(config, options));
  if (options.minimization_steps > 0 && steps > 0) {
    std::uniform_int_distribution<long> pick(1, steps);
    for (int k = 0; k < options.minimization_steps; ++k) minimization_levels.push_back(pick(rng));
    std::sort(minimization_levels.begin(), minimization_levels.end());
  }
  std::size_t next_min = 0;

  const auto sampled = sample_levels(steps, config, cadence);
  std::size_t next_sample = 0;

  auto observe = [&](long level, const Field& S) {
    const double t = static_cast<double>(level) * dt;
    const MomentField mu0 = moment(rho, 0, age);
    double lo = 0.0;
    double hi = 0.0;
    min_max(mu0, lo, hi);
    for (std::size_t i = 0; i < mu0.size(); ++i) res.mu0_lowest[i] = std::min(res.mu0_lowest[i], mu0[i]);
    const ElongationField u = elongation_from_history(hist, level, eps, space, age);
    const AgeField zeta = sample_given_zeta(rates, space, age, t);
    const double E = energy(hist, level, rho, S, eps, space, age);
    const double D = dissipation(rho, u, zeta, space, age);
    const double F = stability_functional(rho, u, space, age);
    res.steps.t.push_back(t);
    res.steps.energy.push_back(E);
    res.steps.dissipation.push_back(D);
    res.steps.stability.push_back(F);
    res.steps.mu0_min.push_back(lo);
    res.steps.mu0_max.push_back(hi);

    if (hi >= 1.0) res.report.violations.push_back("saturation: mu0 >= 1 at t=" + std::to_string(t));
    if (lower_floor > 0.0) {
      for (std::size_t i = 0; i < mu0.size(); ++i) {
        if (mu0[i] < std::min(res.mu0_initial[i], lower_floor) - 10.0 * age.da) {
          res.report.violations.push_back("population lower bound at t=" + std::to_string(t));
          break;
        }
      }
    }
    if (level > 0) {
      const std::size_t n = res.steps.energy.size() - 1;
      if (check_energy && E > res.steps.energy[n - 1] + 1e-6 * std::abs(res.steps.energy.front())) {
        res.report.violations.push_back("energy increase at t=" + std::to_string(t));
      }
      if (!with_source && F > res.steps.stability[n - 1] * (1.0 + 1e-6) + 1e-300) {
        res.report.violations.push_back("stability functional increase at t=" + std::to_string(t));
      }
    }

    if (next_sample < sampled.size() && sampled[next_sample] == level) {
      ++next_sample;
      res.trajectory.t.push_back(t);
      res.trajectory.z.push_back(with_boundary(hist.current()));
      DiagnosticsRecord r;
      r.t = t;
      r.energy = E;
      r.dissipation = D;
      r.mu0_min = lo;
      r.mu0_max = hi;
      r.stability = F;
      const auto limit = limit_density_field(rates, space, age, t);
      r.lyapunov = limit_field_sum(rho_convergence_H(rho, limit, age), space.dx);
      res.records.push_back(r);
    }
  };

  observe(0, S0);
  for (long n = 0; n < steps; ++n) {
    const double t_next = static_cast<double>(n + 1) * dt;
    const AgeField zeta = sample_given_zeta(rates, space, age, static_cast<double>(n) * dt);
    const Field beta = sample_given_beta(rates, space, t_next);
    rho = step_density(rho, zeta, beta, age, dt);
    const Field S = with_source ? sample_source(config.source, space, t_next) : Field{};
    const Field z = step_position(rho, hist, S, eps, space, age);

    const Field resid = volterra_residual(hist, n + 1, rho, z, S, eps, space, age);
    const Field lap = laplacian(z, space.dx);
    const double scale = max_abs(lap) + max_abs(S) + 1e-300;
    res.volterra_residual_max = std::max(res.volterra_residual_max, max_abs(resid) / scale);

    while (next_min < minimization_levels.size() && minimization_levels[next_min] == n + 1) {
      ++next_min;
      const double E0 = candidate_energy(hist, n + 1, rho, z, S, eps, space, age);
      std::uniform_real_distribution<double> uni(-1.0, 1.0);
      Field v(z.size());
      Field zp(z.size());
      for (int k = 0; k < options.minimization_perturbations; ++k) {
        for (double& e : v) e = uni(rng);
        const double vmax = max_abs(v);
        for (std::size_t i = 0; i < z.size(); ++i) zp[i] = z[i] + options.minimization_delta * v[i] / vmax;
        ++res.minimization_checks;
        if (candidate_energy(hist, n + 1, rho, zp, S, eps, space, age) < E0) ++res.minimization_violations;
      }
    }
    observe(n + 1, S);
  }
  if (res.minimization_violations > 0) res.report.violations.push_back("minimization property");
  if (res.volterra_residual_max > 1e-9) res.report.violations.push_back("Volterra residual above tolerance");

  if (!options.out_dir.empty()) {
    write_trajectory_csv(options.out_dir / "trajectory.csv", res.trajectory);
    write_diagnostics_csv(options.out_dir / "diagnostics.csv", res.records);
    if (options.write_density) write_density_csv(options.out_dir / "density.csv", rho, space, age);
    write_run_info(options.out_dir, to_string(config.mode), config, effective_seed(config, options), res.report);
  }
  return res;
}

LimitRunResult run_limit(const SimulationConfig& config, const RunOptions& options) {
  SimulationConfig c = config;
  c.mode = Mode::limit;
  const ValidatedConfig vc = validate_config(c);
  const Grids grids = build_grids(vc);
  const int cadence = effective_cadence(c, options);
  const double interval = cadence * vc.dt;
  const int substeps = c.limit_substeps > 0 ? c.limit_substeps
                                             : std::max(1, static_cast<int>(std::ceil(interval / c.limit_max_dt - 1e-9)));

  LimitRunResult res;
  res.report.warnings = vc.warnings;
  LimitState s = init_limit(c.rates, c.past, grids.space, grids.age);
  res.mu10 = s.mu10;
  res.trajectory.x = grids.space.nodes();
  LimitStepOptions opts;
  opts.allow_elliptic = true;

  const auto levels = sample_levels(vc.steps, c, cadence);
  res.trajectory.t.push_back(0.0);
  res.trajectory.z.push_back(with_boundary(s.z0));
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const double t_end = static_cast<double>(levels[k]) * vc.dt;
    const double frac = static_cast<double>(levels[k] - levels[k - 1]) / cadence;
    const int sub = std::max(1, static_cast<int>(std::lround(substeps * frac)));
    const double before_max = max_abs(s.z0);
    double before_l2 = 0.0;
    for (double v : s.z0) before_l2 += v * v;
    s = advance_limit(s, c.source, t_end, sub, grids.space, opts);
    if (!c.source.present) {
      double after_l2 = 0.0;
      for (double v : s.z0) after_l2 += v * v;
      if (max_abs(s.z0) > before_max * (1.0 + 1e-12)) res.report.violations.push_back("limit maximum principle");
      if (after_l2 > before_l2 * (1.0 + 1e-12)) res.report.violations.push_back("limit L2 contraction");
    }
    res.trajectory.t.push_back(t_end);
    res.trajectory.z.push_back(with_boundary(s.z0));
  }

  if (!options.out_dir.empty()) {
    write_trajectory_csv(options.out_dir / "trajectory.csv", res.trajectory);
    write_run_info(options.out_dir, "limit", c, effective_seed(c, options), res.report);
  }
  return res;
}

std::string SweepResult::table() const {
  std::ostringstream os;
  os << std::setprecision(6);
  const bool with_order = rows.size() > 1;
  os << std::setw(12) << "epsilon" << std::setw(16) << "L2_error";
  if (with_order) os << std::setw(12) << "order";
  os << '\n';
  for (const auto& r : rows) {
    os << std::setw(12) << r.epsilon << std::setw(16) << r.error;
    if (with_order) {
      if (r.order) {
        os << std::setw(12) << *r.order;
      } else {
        os << std::setw(12) << "-";
      }
    }
    os << '\n';
  }
  return os.str();
}

SweepResult run_convergence_sweep(const SimulationConfig& config, const std::vector<double>& epsilons,
                                  const RunOptions& options) {
  if (epsilons.empty()) throw ConfigError("convergence sweep needs at least one epsilon");
  SimulationConfig base = config;
  base.mode = Mode::weak;
  const int cadence = effective_cadence(base, options);
  const double eps_max = *std::max_element(epsilons.begin(), epsilons.end());
  const double interval = cadence * eps_max * base.da;

  SimulationConfig limit_cfg = base;
  limit_cfg.epsilon = eps_max;
  RunOptions limit_opts;
  limit_opts.cadence = cadence;
  const LimitRunResult limit = run_limit(limit_cfg, limit_opts);

  std::vector<std::future<WeakRunResult>> jobs;
  for (double eps : epsilons) {
    SimulationConfig c = base;
    c.epsilon = eps;
    const double q = interval / (eps * base.da);
    const long cad = std::lround(q);
    if (cad < 1 || std::abs(q - static_cast<double>(cad)) > 1e-6 * q) {
      throw ConfigError("output interval is not a multiple of the step for epsilon=" + std::to_string(eps));
    }
    RunOptions o;
    o.cadence = static_cast<int>(cad);
    jobs.push_back(std::async(std::launch::async, [c, o] { return run_weak(c, o); }));
  }

  SweepResult res;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    WeakRunResult w = jobs[k].get();
    SweepRow row;
    row.epsilon = epsilons[k];
    row.error = convergence_error(w.trajectory, limit.trajectory);
    if (k > 0) {
      const auto& prev = res.rows.back();
      row.order = std::log(prev.error / row.error) / std::log(prev.epsilon / row.epsilon);
      if (!(row.error < prev.error)) res.strictly_decreasing = false;
    }
    for (const auto& v : w.report.violations) res.report.violations.push_back("eps=" + std::to_string(row.epsilon) + ": " + v);
    res.rows.push_back(row);
  }
  if (!res.strictly_decreasing) res.report.violations.push_back("convergence errors not strictly decreasing");

  if (!options.out_dir.empty()) {
    std::ostringstream csv;
    csv << std::setprecision(17) << "epsilon,l2_error,order\n";
    for (const auto& r : res.rows) {
      csv << r.epsilon << ',' << r.error << ',';
      if (r.order) csv << *r.order;
      csv << '\n';
    }
    write_text(options.out_dir / "convergence.csv", csv.str());
    write_text(options.out_dir / "convergence_table.txt", res.table());
    write_trajectory_csv(options.out_dir / "limit_trajectory.csv", limit.trajectory);
    write_run_info(options.out_dir, "convergence_sweep", base, effective_seed(base, options), res.report);
  }
  return res;
}

namespace {

CoupledRunResult run_coupled_impl(const SimulationConfig& config, const RunOptions& options, const char* preset) {
  if (config.mode != Mode::coupled) throw ConfigError("coupled runs need mode coupled");
  const ValidatedConfig vc = validate_config(config);
  const Grids grids = build_grids(vc);
  CoupledContext ctx{grids.space, grids.age, config.epsilon, vc.dt};
  const SpaceGrid& space = ctx.space;
  const AgeGrid& age = ctx.age;
  const int cadence = effective_cadence(config, options);
  const RateModel& rates = config.rates;

  CoupledRunResult res;
  res.report.warnings = vc.warnings;
  CoupledState state = init_coupled(config, ctx);
  res.monitor = make_riccati_monitor(state, config.source, rates, ctx);
  state.truncation_k = config.truncation_k > 0.0 ? config.truncation_k
                                                  : default_truncation_k(res.monitor, config.source, ctx);

  // Sign-preservation hypotheses for the elongation.
  double u_lo = 0.0;
  double u_hi = 0.0;
  min_max(state.u.u.values(), u_lo, u_hi);
  bool ds_nonnegative = true;
  for (double t : {0.0, config.final_time}) {
    for (double v : sample_source_rate(config.source, space, t)) ds_nonnegative = ds_nonnegative && v >= 0.0;
  }
  const bool expect_positive_u = u_lo >= 0.0 && ds_nonnegative;
  const bool constant_source = !config.source.present || config.source.rate == 0.0;
  res.min_u = u_lo;
  res.trajectory.x = space.nodes();

  std::vector<double> pending = config.report_times;
  std::sort(pending.begin(), pending.end());
  const auto sampled = sample_levels(vc.steps, config, cadence);
  std::size_t next_sample = 0;
  bool stability_warned = false;
  bool extinction_warned = false;
  const bool no_extinction_hyp = rates.beta_kind == RateModel::BetaKind::given && rates.beta_min() > 0.0;

  auto observe = [&](const CoupledState& s, const Field& S) {
    const MomentField mu0 = moment(s.rho, 0, age);
    double lo = 0.0;
    double hi = 0.0;
    min_max(mu0, lo, hi);
    const double F = stability_functional(s.rho, s.u, space, age);
    const double p = riccati_p(s, rates, ctx);
    res.monitor.record(p);
    res.steps.t.push_back(s.time);
    res.steps.stability.push_back(F);
    res.steps.mu0_min.push_back(lo);
    res.steps.mu0_max.push_back(hi);
    if (hi >= 1.0) res.report.violations.push_back("saturation: mu0 >= 1 at t=" + std::to_string(s.time));
    if (no_extinction_hyp && lo <= kMuFloor && !extinction_warned) {
      extinction_warned = true;
      res.report.warnings.push_back("mu0 reached the floor at t=" + std::to_string(s.time));
    }
    double ulo = 0.0;
    double uhi = 0.0;
    min_max(s.u.u.values(), ulo, uhi);
    res.min_u = std::min(res.min_u, ulo);
    if (expect_positive_u && ulo < -1e-12) {
      res.report.violations.push_back("elongation positivity at t=" + std::to_string(s.time));
    }
    const std::size_t n = res.steps.stability.size();
    if (constant_source && n > 1 && F > res.steps.stability[n - 2] * (1.0 + 1e-6) && !stability_warned) {
      stability_warned = true;
      res.report.warnings.push_back("stability functional increased at t=" + std::to_string(s.time));
    }
    const Field bal = elastic_balance_residual(s, S, ctx);
    const double scale = max_abs(S) + max_abs(laplacian(s.z, space.dx)) + 1e-300;
    res.balance_residual_max = std::max(res.balance_residual_max, max_abs(bal) / scale);
    if (s.truncated) res.truncation_raised = true;

    while (!pending.empty() && std::abs(pending.front() - s.time) <= 0.5 * ctx.dt) {
      res.reports.push_back({s.time, s.z, mu0, s.beta});
      pending.erase(pending.begin());
    }
    if (next_sample < sampled.size() && sampled[next_sample] == s.level) {
      ++next_sample;
      res.trajectory.t.push_back(s.time);
      res.trajectory.z.push_back(with_boundary(s.z));
      DiagnosticsRecord r;
      r.t = s.time;
      r.energy = energy_from_elongation(s.z, s.rho, s.u, S, ctx.epsilon, space, age);
      r.dissipation = dissipation(s.rho, s.u, zeta_field(rates, s.u, space, age, s.time), space, age);
      r.mu0_min = lo;
      r.mu0_max = hi;
      r.stability = F;
      r.p = p;
      r.gamma2 = res.monitor.gamma2;
      r.truncated = s.truncated;
      res.records.push_back(r);
    }
  };

  observe(state, sample_source(config.source, space, 0.0));
  for (long n = 0; n < vc.steps; ++n) {
    state = coupled_step(state, config.source, rates, ctx);
    observe(state, sample_source(config.source, space, state.time));
  }
  if (res.reports.empty() || std::abs(res.reports.back().t - state.time) > 0.5 * ctx.dt) {
    res.reports.push_back({state.time, state.z, moment(state.rho, 0, age), state.beta});
  }
  if (res.monitor.violated) res.report.warnings.push_back("Riccati bound exceeded by the recorded p(t)");
  if (res.truncation_raised) res.report.warnings.push_back("velocity truncation was active");
  if (!pending.empty()) res.report.warnings.push_back("some report times are beyond the final time");
  res.final_state = std::move(state);

  if (!options.out_dir.empty()) {
    write_trajectory_csv(options.out_dir / "trajectory.csv", res.trajectory);
    write_diagnostics_csv(options.out_dir / "diagnostics.csv", res.records);
    if (options.write_density) write_density_csv(options.out_dir / "density.csv", res.final_state.rho, space, age);
    write_run_info(options.out_dir, preset, config, effective_seed(config, options), res.report);
  }
  return res;
}

}  // namespace

CoupledRunResult run_coupled(const SimulationConfig& config, const RunOptions& options) {
  return run_coupled_impl(config, options, "coupled");
}

CoupledRunResult run_detachment(const SimulationConfig& config, const RunOptions& options) {
  CoupledRunResult res = run_coupled_impl(config, options, "detachment");
  if (!options.out_dir.empty()) {
    const Grids grids = build_grids(validate_config(config));
    std::vector<double> x = grids.space.nodes();
    std::vector<double> times;
    std::vector<std::vector<double>> zc;
    std::vector<std::vector<double>> mc;
    for (const auto& snap : res.reports) {
      times.push_back(snap.t);
      zc.push_back(with_boundary(snap.z));
      std::vector<double> m(x.size(), kMu0PlotFloor);
      for (std::size_t i = 0; i < snap.mu0.size(); ++i) m[i + 1] = std::max(snap.mu0[i], kMu0PlotFloor);
      // mu0 is not defined on the boundary; repeat the neighbouring values.
      m.front() = m[1];
      m.back() = m[m.size() - 2];
      mc.push_back(std::move(m));
    }
    write_profile_columns(options.out_dir / "detachment_z.dat", x, times, zc, "z");
    write_profile_columns(options.out_dir / "detachment_mu0.dat", x, times, mc, "mu0");
  }
  return res;
}

}  // namespace adhesion
