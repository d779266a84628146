#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adhesion/coupled.hpp"
#include "adhesion/diagnostics.hpp"
#include "adhesion/grid.hpp"

namespace adhesion {

enum class Preset { weak, weak_source, limit, coupled, convergence_sweep, detachment };

std::string to_string(Preset preset);
Preset preset_from_string(const std::string& name);

/// Default configuration of each preset. The detachment preset carries the
/// reference constants (S = 1e4, z_p = sin(pi x)/pi, rho_I = e^{-a},
/// zeta = 1 + |u|, eps = 1e-3, threshold 1000).
SimulationConfig preset_config(Preset preset);

struct RunOptions {
  std::filesystem::path out_dir;  // empty: no files are written
  int cadence = 0;                // 0: use config.cadence
  std::optional<std::uint64_t> seed;
  bool write_density = false;     // final density snapshot as CSV
  int minimization_steps = 0;     // weak runs: steps checked for the minimization property
  int minimization_perturbations = 100;
  double minimization_delta = 1e-3;
};

/// Per-level series, index n = level.
struct StepSeries {
  std::vector<double> t;
  std::vector<double> energy;
  std::vector<double> dissipation;
  std::vector<double> stability;
  std::vector<double> mu0_min;
  std::vector<double> mu0_max;
};

struct RunReport {
  std::vector<std::string> violations;  // hard invariant failures
  std::vector<std::string> warnings;
  int exit_code() const { return violations.empty() ? 0 : 2; }
};

struct WeakRunResult {
  Trajectory trajectory;
  std::vector<DiagnosticsRecord> records;
  StepSeries steps;
  Field mu0_initial;
  Field mu0_lowest;  // per-node minimum of mu0 over the run
  double volterra_residual_max = 0.0;  // relative to the residual scale
  int minimization_checks = 0;
  int minimization_violations = 0;
  RunReport report;
};

/// Weak (and weak-with-source) mode: kinetics, then the delay position solve.
WeakRunResult run_weak(const SimulationConfig& config, const RunOptions& options = {});

struct LimitRunResult {
  Trajectory trajectory;
  Field mu10;
  RunReport report;
};

/// Friction-limit heat equation sampled every cadence * eps * da.
LimitRunResult run_limit(const SimulationConfig& config, const RunOptions& options = {});

struct SweepRow {
  double epsilon = 0.0;
  double error = 0.0;
  std::optional<double> order;  // log2-type order against the previous row
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool strictly_decreasing = true;
  RunReport report;
  std::string table() const;
};

/// Runs the weak mode for every epsilon concurrently on the output grid of
/// the largest epsilon and compares each trajectory with the limit solution.
SweepResult run_convergence_sweep(const SimulationConfig& config, const std::vector<double>& epsilons,
                                  const RunOptions& options = {});

struct ProfileSnapshot {
  double t = 0.0;
  Field z;
  Field mu0;
  Field beta;
};

struct CoupledRunResult {
  Trajectory trajectory;
  std::vector<DiagnosticsRecord> records;
  StepSeries steps;
  std::vector<ProfileSnapshot> reports;  // at config.report_times and the final time
  CoupledState final_state;
  RiccatiMonitor monitor;
  double min_u = 0.0;
  double balance_residual_max = 0.0;  // relative to max |S| + max |Lap z|
  bool truncation_raised = false;
  RunReport report;
};

CoupledRunResult run_coupled(const SimulationConfig& config, const RunOptions& options = {});

/// Coupled run that additionally writes the (x, z) and (x, mu0) profile
/// files, mu0 clipped below at kMu0PlotFloor.
inline constexpr double kMu0PlotFloor = 1e-8;
CoupledRunResult run_detachment(const SimulationConfig& config, const RunOptions& options = {});

}  // namespace adhesion
