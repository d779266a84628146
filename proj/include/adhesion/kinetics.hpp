#pragma once

#include <span>
#include <string>
#include <vector>

#include "adhesion/grid.hpp"

namespace adhesion {

/// Row-major array indexed by (interior node, age node).
class AgeField {
public:
  AgeField() = default;
  AgeField(int nx, int n_age, double fill = 0.0)
      : nx_(nx), n_age_(n_age), values_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(n_age), fill) {}

  int nx() const { return nx_; }
  int n_age() const { return n_age_; }

  double& operator()(int i, int j) { return values_[index(i, j)]; }
  double operator()(int i, int j) const { return values_[index(i, j)]; }

  std::span<double> row(int i) { return {values_.data() + index(i, 0), static_cast<std::size_t>(n_age_)}; }
  std::span<const double> row(int i) const {
    return {values_.data() + index(i, 0), static_cast<std::size_t>(n_age_)};
  }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_age_) + static_cast<std::size_t>(j);
  }

  int nx_ = 0;
  int n_age_ = 0;
  std::vector<double> values_;
};

/// Bond age density at one time level.
struct DensityField {
  AgeField rho;
  double time = 0.0;
};

/// Per-node moment of the density.
using MomentField = Field;

/// Equilibrium density of the friction limit at one (x, t).
struct LimitDensity {
  std::vector<double> profile;  // rho_0(a_j)
  double mu00 = 0.0;
  double mu10 = 0.0;
};

/// Samples rho_I. Throws NegativeDensity or MassAtLeastOne; an identically
/// zero density is accepted and reported through `warnings`.
DensityField init_density(const DensitySpec& spec, const SpaceGrid& space, const AgeGrid& age,
                          std::vector<std::string>* warnings = nullptr);

/// One CFL-1 step of the age-structured model.
///
/// Interior ages move one cell along the characteristic with exact decay
/// exp(-da * zeta_departure(i, j-1)); the renewal value solves
/// rho_0 = beta (1 - w_0 rho_0 - m) in closed form.
DensityField step_density(const DensityField& rho, const AgeField& zeta_departure, std::span<const double> beta,
                          const AgeGrid& age, double dt);

MomentField moment(const DensityField& rho, int k, const AgeGrid& age);

/// Off-rate of the given kind sampled at time t on every (x_i, a_j).
AgeField sample_given_zeta(const RateModel& rates, const SpaceGrid& space, const AgeGrid& age, double t);

/// On-rate of the given kind at time t on the interior nodes.
Field sample_given_beta(const RateModel& rates, const SpaceGrid& space, double t);

struct OracleInputs {
  double epsilon = 0.0;
  double dt = 0.0;
  const RateModel* rates = nullptr;     // given kind only
  const DensitySpec* initial = nullptr;
  std::span<const double> mu0_history;  // mu0(x, m dt), m = 0..n
  double quad_step = 1e-3;              // trapezoid step along the characteristic (in age units)
};

/// Closed-form value of the density along characteristics at (x, a, t).
/// Throws HistoryMissing when the birth time of the characteristic is not a
/// stored level.
double density_characteristics_oracle(double x, double a, double t, const OracleInputs& in);

/// Equilibrium density for the limit problem with on-rate beta0 and off-rate
/// samples zeta0[j] = zeta_0(a_j). The cumulative off-rate integral uses the
/// same left-endpoint sums as step_density, so the limit profile is the exact
/// fixed point of the discrete kinetics for time-independent rates.
LimitDensity limit_density(double beta0, std::span<const double> zeta0, const AgeGrid& age);
LimitDensity limit_density(double beta0, double zeta0, const AgeGrid& age);

}  // namespace adhesion
