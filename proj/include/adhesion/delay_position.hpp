#pragma once

#include <span>
#include <vector>

#include "adhesion/grid.hpp"
#include "adhesion/kinetics.hpp"

namespace adhesion {

/// Position snapshots z(., t^m) for the last na+1 levels, backed by the past
/// data for negative levels. Level m sits at time m * dt, so the delayed
/// position z(t^n - eps a_j) is exactly the snapshot at level n - j.
class PositionHistory {
public:
  PositionHistory(const SpaceGrid& space, const AgeGrid& age, const PastData& past, double dt);

  /// Appends the snapshot for level() + 1.
  void push(Field z);

  /// Newest stored level; -1 before the initial position is pushed.
  long level() const { return level_; }
  double time() const { return static_cast<double>(level_) * dt_; }
  double dt() const { return dt_; }
  int depth() const { return static_cast<int>(ring_.size()); }

  /// z at level m. Negative levels come from the past data; nonnegative
  /// levels must lie in [level() - na, level()], otherwise HistoryMissing.
  std::span<const double> at_level(long m) const;

  /// Newest snapshot.
  std::span<const double> current() const { return at_level(level_); }

private:
  std::vector<Field> ring_;
  std::vector<Field> past_;  // past_[k] = z_p(., -k dt), k = 0..na
  long level_ = -1;
  double dt_ = 0.0;
};

/// Right-hand side of the per-step position solve.
struct HistoryIntegral {
  Field delayed;          // sum_{j >= 1} w_j rho_j z^{L-j}
  Field implicit_weight;  // w_0 rho_0, multiplies the unknown z^L
};

/// Delay quadrature for the level L = hist.level() + 1 at which rho is given.
HistoryIntegral history_integral(const PositionHistory& hist, const DensityField& rho, const AgeGrid& age);

/// Solves (mu_{0,I} - eps Lap) z = sum_j w_j rho_I z_p(-eps a_j) + eps S(0).
/// `source` is empty when absent. With `implicit_origin` the age-0 slot is
/// read as z itself, as in step_position: the operator becomes
/// mu_{0,I} - w_0 rho_I(., 0) and the sum starts at j = 1. This is the
/// datum for which u_I(., 0) = 0 balances Lap z + S exactly.
Field initial_position(const DensityField& rho_initial, const PastData& past, std::span<const double> source,
                       double epsilon, const SpaceGrid& space, const AgeGrid& age, bool implicit_origin = false);

/// One position step: solves (mu_0 - w_0 rho_0 - eps Lap) z = delayed + eps S
/// with rho at the new level, pushes the result into `hist` and returns it.
Field step_position(const DensityField& rho_next, PositionHistory& hist, std::span<const double> source,
                    double epsilon, const SpaceGrid& space, const AgeGrid& age);

/// L_eps(z, rho) - Lap z - S at level `level`, with z the candidate for that
/// level and the delayed values taken from `hist`.
Field volterra_residual(const PositionHistory& hist, long level, const DensityField& rho, std::span<const double> z,
                        std::span<const double> source, double epsilon, const SpaceGrid& space,
                        const AgeGrid& age);

}  // namespace adhesion
