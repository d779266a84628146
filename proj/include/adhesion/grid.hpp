#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adhesion {

/// Values on the interior space nodes x_1..x_nx. Boundary values are zero and
/// never stored.
using Field = std::vector<double>;

enum class Mode { weak, weak_with_source, coupled, limit };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Initial bond density rho_I(x, a).
struct DensitySpec {
  enum class Kind { exp_decay, constant, zero };
  Kind kind = Kind::exp_decay;
  double amplitude = 1.0;  // exp_decay: amplitude * exp(-rate * a); constant: amplitude
  double rate = 1.0;

  double value(double x, double a) const;
};

/// Past positions z_p(x, t) for t <= 0:
///   sin_pi: amplitude * sin(pi x) / pi * (1 + time_slope * t)
struct PastData {
  enum class Kind { sin_pi, zero };
  Kind kind = Kind::sin_pi;
  double amplitude = 1.0;
  double time_slope = 0.0;

  double value(double x, double t) const;
  /// Lipschitz constant in time, C_zp(x).
  double lipschitz(double x) const;
};

/// External load S(x, t) = (value + rate * t) * shape(x).
struct SourceModel {
  enum class Shape { uniform, sin_pi };  // sin_pi: pi^2 sin(pi x)
  bool present = false;
  Shape shape = Shape::uniform;
  double value = 0.0;
  double rate = 0.0;

  double at(double x, double t) const;
  double dt_at(double x, double t) const;
};

/// Off-rate zeta and on-rate beta.
///
/// Given off-rate:  zeta(x,a) = zeta0 (1 + zeta_age_amp a/(1+a)) (1 + zeta_x_amp sin(pi x)).
/// Lipschitz off-rate: zeta(u) = zeta0 + zeta_lip |u|.
/// Given on-rate:  beta(x) = beta0 (1 + beta_x_amp sin(pi x)).
/// Threshold on-rate: beta = beta0 on {0 < z < threshold}, 0 elsewhere.
struct RateModel {
  enum class ZetaKind { given, lipschitz_of_u };
  enum class BetaKind { given, threshold_on_z };

  ZetaKind zeta_kind = ZetaKind::given;
  double zeta0 = 1.0;
  double zeta_age_amp = 0.0;
  double zeta_x_amp = 0.0;
  double zeta_lip = 1.0;

  BetaKind beta_kind = BetaKind::given;
  double beta0 = 1.0;
  double beta_x_amp = 0.0;
  double threshold = 1000.0;

  double zeta_given(double x, double a, double t) const;
  double zeta_of_u(double u) const;
  double beta_given(double x, double t) const;
  double beta_threshold(double z) const;

  // Bounds over x in (0,1), a >= 0 for the given kinds.
  double zeta_min() const;
  double zeta_max() const;
  double beta_min() const;
  double beta_max() const;
};

struct SimulationConfig {
  double epsilon = 0.1;
  double final_time = 1.0;
  int nx = 64;
  double da = 0.01;
  double a_max = 10.0;
  Mode mode = Mode::weak;
  RateModel rates;
  PastData past;
  DensitySpec initial_density;
  SourceModel source;
  double truncation_k = 0.0;  // 0: derive from the Riccati bound
  int cadence = 1;            // output every `cadence` steps
  std::uint64_t seed = 1;
  int limit_substeps = 0;     // 0: choose so the limit step is at most limit_max_dt
  double limit_max_dt = 1e-5;
  std::vector<double> report_times;
};

struct Violation {
  std::string name;
  std::string location;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

/// Checks the modelling hypotheses and grid rules without throwing.
ValidationReport check_config(const SimulationConfig& config);

struct ValidatedConfig {
  SimulationConfig config;
  double dt = 0.0;
  long steps = 0;
  int na = 0;
  std::vector<std::string> warnings;
};

/// Throws HypothesisViolation naming the first failed check.
ValidatedConfig validate_config(const SimulationConfig& config);

struct SpaceGrid {
  int nx = 0;
  double dx = 0.0;

  /// Coordinate of node i, i = 0..nx+1.
  double node(int i) const { return i * dx; }
  /// Coordinate of interior entry k (0-based), i.e. node k+1.
  double interior(int k) const { return (k + 1) * dx; }
  std::vector<double> nodes() const;
};

struct AgeGrid {
  int na = 0;
  double da = 0.0;
  std::vector<double> weights;  // trapezoid weights, size na+1

  double a(int j) const { return j * da; }
  double a_max() const { return na * da; }
  int size() const { return na + 1; }
};

struct TimeStepping {
  double dt = 0.0;
  long steps = 0;
  int history_depth = 0;
};

SpaceGrid make_space_grid(int nx);
AgeGrid make_age_grid(double da, double a_max);

struct Grids {
  SpaceGrid space;
  AgeGrid age;
  TimeStepping time;
};

Grids build_grids(const ValidatedConfig& config);

/// Trapezoid rule over the age grid for one column of samples.
double trapezoid(const AgeGrid& grid, std::span<const double> values);

/// S(., t) on the interior nodes; empty when the source is absent.
Field sample_source(const SourceModel& source, const SpaceGrid& space, double t);
/// dS/dt(., t) on the interior nodes; empty when the source is absent.
Field sample_source_rate(const SourceModel& source, const SpaceGrid& space, double t);

/// Samples the initial density on the interior nodes as a row-major nx x (na+1) array.
std::vector<double> sample_density(const DensitySpec& spec, const SpaceGrid& space, const AgeGrid& age);

}  // namespace adhesion
