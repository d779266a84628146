#include "adhesion/coupled.hpp"

#include <algorithm>
#include <cmath>

#include "adhesion/delay_position.hpp"
#include "adhesion/diagnostics.hpp"
#include "adhesion/elliptic1d.hpp"
#include "adhesion/errors.hpp"

namespace adhesion {

ElongationField init_elongation(std::span<const double> z0, const PastData& past, double epsilon,
                                const SpaceGrid& space, const AgeGrid& age) {
  ElongationField out{AgeField(space.nx, age.size()), 0.0};
  for (int i = 0; i < space.nx; ++i) {
    const double x = space.interior(i);
    const double zi = z0[static_cast<std::size_t>(i)];
    for (int j = 1; j <= age.na; ++j) out.u(i, j) = (zi - past.value(x, -epsilon * age.a(j))) / epsilon;
  }
  return out;
}

ElongationField step_elongation(const ElongationField& u, std::span<const double> g, const AgeGrid& age, double dt) {
  const int nx = u.u.nx();
  ElongationField out{AgeField(nx, u.u.n_age()), u.time + dt};
  for (int i = 0; i < nx; ++i) {
    const double inc = age.da * g[static_cast<std::size_t>(i)];
    for (int j = 1; j < u.u.n_age(); ++j) out.u(i, j) = u.u(i, j - 1) + inc;
  }
  return out;
}

AgeField zeta_field(const RateModel& rates, const ElongationField& u, const SpaceGrid& space, const AgeGrid& age,
                    double t) {
  if (rates.zeta_kind == RateModel::ZetaKind::given) return sample_given_zeta(rates, space, age, t);
  AgeField out(space.nx, age.size());
  for (int i = 0; i < space.nx; ++i) {
    for (int j = 0; j <= age.na; ++j) out(i, j) = rates.zeta_of_u(u.u(i, j));
  }
  return out;
}

Field beta_field(const RateModel& rates, std::span<const double> z, const SpaceGrid& space, double t) {
  if (rates.beta_kind == RateModel::BetaKind::given) return sample_given_beta(rates, space, t);
  Field out(static_cast<std::size_t>(space.nx));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rates.beta_threshold(z[i]);
  return out;
}

Field solve_velocity(const DensityField& rho, const ElongationField& u, const RateModel& rates,
                     std::span<const double> dsdt, double epsilon, const SpaceGrid& space, const AgeGrid& age) {
  const AgeField zeta = zeta_field(rates, u, space, age, rho.time);
  Field rhs(static_cast<std::size_t>(space.nx), 0.0);
  for (int i = 0; i < space.nx; ++i) {
    double s = 0.0;
    for (int j = 0; j <= age.na; ++j) {
      s += age.weights[static_cast<std::size_t>(j)] * zeta(i, j) * rho.rho(i, j) * u.u(i, j);
    }
    if (!dsdt.empty()) s += epsilon * dsdt[static_cast<std::size_t>(i)];
    rhs[static_cast<std::size_t>(i)] = s;
  }
  return solve(assemble(moment(rho, 0, age), epsilon, space), rhs);
}

CoupledState init_coupled(const SimulationConfig& config, const CoupledContext& ctx) {
  CoupledState s;
  s.rho = init_density(config.initial_density, ctx.space, ctx.age);
  const Field S0 = sample_source(config.source, ctx.space, 0.0);
  s.z = initial_position(s.rho, config.past, S0, ctx.epsilon, ctx.space, ctx.age, true);
  s.u = init_elongation(s.z, config.past, ctx.epsilon, ctx.space, ctx.age);
  s.g = solve_velocity(s.rho, s.u, config.rates, sample_source_rate(config.source, ctx.space, 0.0), ctx.epsilon,
                       ctx.space, ctx.age);
  s.beta = beta_field(config.rates, s.z, ctx.space, 0.0);
  s.truncation_k = config.truncation_k;
  return s;
}

CoupledState coupled_step(const CoupledState& state, const SourceModel& source, const RateModel& rates,
                          const CoupledContext& ctx) {
  const SpaceGrid& space = ctx.space;
  const AgeGrid& age = ctx.age;
  const int nx = space.nx;
  const int na = age.na;
  const double t_next = state.time + ctx.dt;

  // Shifted elongation and the predictor along the characteristic.
  const ElongationField shifted = step_elongation(state.u, Field(static_cast<std::size_t>(nx), 0.0), age, ctx.dt);
  AgeField zeta_dep(nx, age.size());
  if (rates.zeta_kind == RateModel::ZetaKind::given) {
    zeta_dep = sample_given_zeta(rates, space, age, state.time);
  } else {
    for (int i = 0; i < nx; ++i) {
      const double inc = age.da * state.g[static_cast<std::size_t>(i)];
      for (int j = 0; j < na; ++j) zeta_dep(i, j) = rates.zeta_of_u(state.u.u(i, j) + inc);
      zeta_dep(i, na) = rates.zeta_of_u(state.u.u(i, na) + inc);
    }
  }

  CoupledState next;
  next.beta = beta_field(rates, state.z, space, t_next);
  next.rho = step_density(state.rho, zeta_dep, next.beta, age, ctx.dt);

  // Change of the elastic force carried by the bonds during the shift.
  Field rhs(static_cast<std::size_t>(nx));
  Field c(static_cast<std::size_t>(nx));
  const Field S_now = sample_source(source, space, state.time);
  const Field S_next = sample_source(source, space, t_next);
  for (int i = 0; i < nx; ++i) {
    double d = 0.0;
    for (int k = 0; k < na; ++k) {
      const double dec = std::exp(-age.da * zeta_dep(i, k));
      const double coef = age.weights[static_cast<std::size_t>(k)] - age.weights[static_cast<std::size_t>(k) + 1] * dec;
      d += coef * state.rho.rho(i, k) * state.u.u(i, k);
    }
    d += age.weights[static_cast<std::size_t>(na)] * state.rho.rho(i, na) * state.u.u(i, na);
    const auto k = static_cast<std::size_t>(i);
    const double dS = source.present ? S_next[k] - S_now[k] : 0.0;
    rhs[k] = (dS + d) / age.da;
    double m = 0.0;
    for (int j = 1; j <= na; ++j) m += age.weights[static_cast<std::size_t>(j)] * next.rho.rho(i, j);
    c[k] = m;
  }
  next.g = solve(assemble(c, ctx.epsilon, space), rhs);

  next.truncation_k = state.truncation_k;
  if (state.truncation_k > 0.0) {
    for (double& v : next.g) {
      if (std::abs(v) > state.truncation_k) {
        next.truncated = true;
        v = std::clamp(v, -state.truncation_k, state.truncation_k);
      }
    }
  }
  for (double v : next.g) {
    if (!std::isfinite(v)) throw NonfiniteValue("velocity is not finite");
  }

  next.u = shifted;
  for (int i = 0; i < nx; ++i) {
    const double inc = age.da * next.g[static_cast<std::size_t>(i)];
    for (int j = 1; j <= na; ++j) next.u.u(i, j) += inc;
  }
  next.z = state.z;
  for (std::size_t k = 0; k < next.z.size(); ++k) next.z[k] += ctx.dt * next.g[k];
  next.time = t_next;
  next.level = state.level + 1;
  return next;
}

Field elastic_balance_residual(const CoupledState& state, std::span<const double> source, const CoupledContext& ctx) {
  const Field lap = laplacian(state.z, ctx.space.dx);
  Field out(lap.size());
  for (int i = 0; i < ctx.space.nx; ++i) {
    double L = 0.0;
    for (int j = 1; j <= ctx.age.na; ++j) {
      L += ctx.age.weights[static_cast<std::size_t>(j)] * state.rho.rho(i, j) * state.u.u(i, j);
    }
    const auto k = static_cast<std::size_t>(i);
    out[k] = L - lap[k] - (source.empty() ? 0.0 : source[k]);
  }
  return out;
}

Field mu_ode_residual(const CoupledState& prev, const CoupledState& next, std::span<const double> source,
                      std::span<const double> beta, double epsilon, const CoupledContext& ctx) {
  const MomentField m_prev = moment(prev.rho, 0, ctx.age);
  const MomentField m_next = moment(next.rho, 0, ctx.age);
  const Field lap = laplacian(next.z, ctx.space.dx);
  const double dt = next.time - prev.time;
  Field out(m_next.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double b = beta[i];
    out[i] = epsilon * (m_next[i] - m_prev[i]) / dt + (b + 1.0) * m_next[i] + lap[i] +
             (source.empty() ? 0.0 : source[i]) - b;
  }
  return out;
}

AsymptoticProfile asymptotic_profile(std::span<const double> beta, std::span<const double> source,
                                     const SpaceGrid& space) {
  AsymptoticProfile out;
  out.mu.resize(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) out.mu[i] = beta[i] / (beta[i] + 1.0);
  if (source.empty()) {
    out.z.assign(static_cast<std::size_t>(space.nx), 0.0);
  } else {
    out.z = solve(assemble(0.0, 1.0, space), source);
  }
  return out;
}

double riccati_gamma2(double p0, double gamma1, double h, double epsilon, double omega) {
  if (!(gamma1 > 0.0)) throw NonpositiveGamma1("gamma1 must be positive");
  const double root = (omega + std::sqrt(omega * omega + 4.0 * h * gamma1 * epsilon * epsilon)) / (2.0 * epsilon * gamma1);
  return std::max(p0, root);
}

double riccati_p(const CoupledState& state, const RateModel& rates, const CoupledContext& ctx) {
  const AgeField zeta = zeta_field(rates, state.u, ctx.space, ctx.age, state.time);
  double s = 0.0;
  for (int i = 0; i < ctx.space.nx; ++i) {
    for (int j = 0; j <= ctx.age.na; ++j) {
      s += ctx.age.weights[static_cast<std::size_t>(j)] * zeta(i, j) * std::abs(state.u.u(i, j)) * state.rho.rho(i, j);
    }
  }
  return ctx.space.dx * s;
}

double h_minus1_norm(std::span<const double> f, const SpaceGrid& space) {
  if (f.empty()) return 0.0;
  const Field phi = solve(assemble(0.0, 1.0, space), f);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * phi[i];
  return std::sqrt(std::max(0.0, space.dx * s));
}

RiccatiMonitor make_riccati_monitor(const CoupledState& initial, const SourceModel& source, const RateModel& rates,
                                    const CoupledContext& ctx) {
  RiccatiMonitor m;
  const double functional = stability_functional(initial.rho, initial.u, ctx.space, ctx.age);
  m.gamma1 = 1.0 / std::max(functional, 1e-12);
  const bool lipschitz = rates.zeta_kind == RateModel::ZetaKind::lipschitz_of_u;
  const double lip = lipschitz ? rates.zeta_lip : 0.0;
  const double zeta_zero = lipschitz ? rates.zeta0 : rates.zeta_max();
  const double ds = h_minus1_norm(sample_source_rate(source, ctx.space, initial.time), ctx.space);
  m.h = m.omega * ds * (2.0 * lip / m.gamma1 + zeta_zero);
  const double p0 = riccati_p(initial, rates, ctx);
  m.gamma2 = riccati_gamma2(p0, m.gamma1, m.h, ctx.epsilon, m.omega);
  m.p = p0;
  return m;
}

double default_truncation_k(const RiccatiMonitor& monitor, const SourceModel& source, const CoupledContext& ctx) {
  const double ds = h_minus1_norm(sample_source_rate(source, ctx.space, 0.0), ctx.space);
  return std::floor(monitor.gamma2 / ctx.epsilon + ds) + 1.0;
}

}  // namespace adhesion
