#pragma once

#include <span>

#include "adhesion/grid.hpp"
#include "adhesion/kinetics.hpp"

namespace adhesion {

/// u(x, a) = (z(x, t) - z(x, t - eps a)) / eps; u(., 0) = 0.
struct ElongationField {
  AgeField u;
  double time = 0.0;
};

struct CoupledState {
  DensityField rho;
  ElongationField u;
  Field z;
  Field g;     // velocity dz/dt
  Field beta;  // on-rate used for the latest renewal
  double time = 0.0;
  long level = 0;
  double truncation_k = 0.0;  // 0: no clamp
  bool truncated = false;     // clamp was active on the latest step
};

struct CoupledContext {
  SpaceGrid space;
  AgeGrid age;
  double epsilon = 0.0;
  double dt = 0.0;
};

/// u_I(x, a_j) = (z0(x) - z_p(x, -eps a_j)) / eps.
ElongationField init_elongation(std::span<const double> z0, const PastData& past, double epsilon,
                                const SpaceGrid& space, const AgeGrid& age);

/// u^{n+1}[j] = u^n[j-1] + da g, u^{n+1}[0] = 0.
ElongationField step_elongation(const ElongationField& u, std::span<const double> g, const AgeGrid& age, double dt);

/// Off-rate on (x_i, a_j) for either kind.
AgeField zeta_field(const RateModel& rates, const ElongationField& u, const SpaceGrid& space, const AgeGrid& age,
                    double t);

/// On-rate on the interior nodes; the threshold kind reads z.
Field beta_field(const RateModel& rates, std::span<const double> z, const SpaceGrid& space, double t);

/// (mu_0 - eps Lap) g = sum_j w_j zeta(u) rho u + eps dS/dt.
Field solve_velocity(const DensityField& rho, const ElongationField& u, const RateModel& rates,
                     std::span<const double> dsdt, double epsilon, const SpaceGrid& space, const AgeGrid& age);

/// State at t = 0: rho_I, the initial position (with eps S(0)), u_I and g^0
/// from solve_velocity.
CoupledState init_coupled(const SimulationConfig& config, const CoupledContext& ctx);

/// One step of the coupled system.
///
/// The elongation is shifted along the characteristic, the off-rate is
/// evaluated on the predicted elongation u^n[j-1] + da g^n and the density
/// is renewed with the on-rate read from z^n. The new velocity is then the
/// one that keeps the elastic balance sum_j w_j rho u = Lap z + S exact at
/// the new level:
///   ((mu_0 - w_0 rho_0) - eps Lap) g = (S^{n+1} - S^n + D) / da,
///   D = sum_j w_j rho^n_j u^n_j - sum_{j>=1} w_j rho^{n+1}_j u^n_{j-1}.
/// Finally g is clamped at +-k, u^{n+1} = shift(u^n) + da g and
/// z^{n+1} = z^n + dt g.
CoupledState coupled_step(const CoupledState& state, const SourceModel& source, const RateModel& rates,
                          const CoupledContext& ctx);

/// sum_j w_j rho u - Lap z - S on the interior nodes.
Field elastic_balance_residual(const CoupledState& state, std::span<const double> source, const CoupledContext& ctx);

/// eps (mu0^{n+1} - mu0^n)/dt + (beta + 1) mu0^{n+1} + Lap z^{n+1} + S - beta,
/// meaningful for zeta(u) = 1 + |u| and u >= 0.
Field mu_ode_residual(const CoupledState& prev, const CoupledState& next, std::span<const double> source,
                      std::span<const double> beta, double epsilon, const CoupledContext& ctx);

struct AsymptoticProfile {
  Field mu;
  Field z;
};

/// mu = beta / (beta + 1); -Lap z = S.
AsymptoticProfile asymptotic_profile(std::span<const double> beta, std::span<const double> source,
                                     const SpaceGrid& space);

/// max(p0, (omega + sqrt(omega^2 + 4 h gamma1 eps^2)) / (2 eps gamma1)).
/// Throws NonpositiveGamma1 when gamma1 <= 0.
double riccati_gamma2(double p0, double gamma1, double h, double epsilon, double omega = 0.5);

/// p = sum_x dx sum_j w_j zeta(u) |u| rho.
double riccati_p(const CoupledState& state, const RateModel& rates, const CoupledContext& ctx);

/// Discrete H^{-1} norm of f: sqrt(sum dx f phi) with -Lap phi = f.
double h_minus1_norm(std::span<const double> f, const SpaceGrid& space);

struct RiccatiMonitor {
  double omega = 0.5;
  double gamma1 = 0.0;
  double h = 0.0;
  double gamma2 = 0.0;
  double p = 0.0;
  bool violated = false;

  void record(double p_now) {
    p = p_now;
    if (p_now > gamma2) violated = true;
  }
};

/// Builds the monitor from the initial state: gamma1 is the reciprocal of the
/// initial stability functional, h = omega ||dS/dt||_{H^-1} (2 zeta_Lip/gamma1 + zeta(0)).
RiccatiMonitor make_riccati_monitor(const CoupledState& initial, const SourceModel& source, const RateModel& rates,
                                    const CoupledContext& ctx);

/// floor(gamma2/eps + ||dS/dt||_{H^-1}) + 1.
double default_truncation_k(const RiccatiMonitor& monitor, const SourceModel& source, const CoupledContext& ctx);

}  // namespace adhesion
