#pragma once

#include <span>
#include <string>
#include <vector>

#include "adhesion/coupled.hpp"
#include "adhesion/delay_position.hpp"
#include "adhesion/grid.hpp"
#include "adhesion/kinetics.hpp"

namespace adhesion {

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double mu0_min = 0.0;
  double mu0_max = 0.0;
  double stability = 0.0;
  double lyapunov = 0.0;  // integral over x of H[rho - rho_0]
  double p = 0.0;
  double gamma2 = 0.0;
  bool truncated = false;
};

/// 1/2 sum dx [ |D+ z|^2 + sum_j w_j rho_j (z - z(t - eps a_j))^2 / eps ] - sum dx S z,
/// with z the snapshot at `level` and delayed values from `hist`.
double energy(const PositionHistory& hist, long level, const DensityField& rho, std::span<const double> source,
              double epsilon, const SpaceGrid& space, const AgeGrid& age);

/// Same functional written with the elongation: the delay term is eps rho u^2.
double energy_from_elongation(std::span<const double> z, const DensityField& rho, const ElongationField& u,
                              std::span<const double> source, double epsilon, const SpaceGrid& space,
                              const AgeGrid& age);

/// 1/2 sum over the nx+1 cells of dx |(z_{i+1} - z_i)/dx|^2.
double gradient_energy(std::span<const double> z, const SpaceGrid& space);

/// sum_x dx sum_j w_j zeta rho u^2.
double dissipation(const DensityField& rho, const ElongationField& u, const AgeField& zeta, const SpaceGrid& space,
                   const AgeGrid& age);

/// Per x: |sum_j w_j f_j| + sum_j w_j |f_j|.
Field lyapunov_H(const AgeField& f, const AgeGrid& age);

/// sum_x dx sum_j w_j rho |u|.
double stability_functional(const DensityField& rho, const ElongationField& u, const SpaceGrid& space,
                            const AgeGrid& age);

/// Equilibrium densities of the given-kind rates at time t, one per node.
std::vector<LimitDensity> limit_density_field(const RateModel& rates, const SpaceGrid& space, const AgeGrid& age,
                                              double t);

/// H[rho_eps - rho_0] per x.
Field rho_convergence_H(const DensityField& rho, std::span<const LimitDensity> limit, const AgeGrid& age);

/// Elongation reconstructed from the position history at `level`.
ElongationField elongation_from_history(const PositionHistory& hist, long level, double epsilon,
                                        const SpaceGrid& space, const AgeGrid& age);

/// Sampled position trajectory on nodes x (boundaries included).
struct Trajectory {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<std::vector<double>> z;  // z[n][i]
};

/// Discrete L2(Q_T) norm of the difference, trapezoid in x and t.
/// Throws GridMismatch when the sample grids differ.
double convergence_error(const Trajectory& a, const Trajectory& b);

/// Fixed CSV column order of DiagnosticsRecord.
std::string diagnostics_header();
std::string diagnostics_row(const DiagnosticsRecord& r);

}  // namespace adhesion
