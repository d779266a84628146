#pragma once

#include <span>

#include "adhesion/grid.hpp"

namespace adhesion {

inline constexpr double kMuFloor = 1e-12;

struct LimitState {
  Field z0;
  Field mu10;  // friction coefficient
  double time = 0.0;
};

struct LimitStepOptions {
  /// Treat friction at or below kMuFloor as zero (steady row -Lap z = S)
  /// instead of throwing DegenerateFriction.
  bool allow_elliptic = false;
};

/// z_0(x, 0) = z_p(x, 0) and mu_{1,0} from the equilibrium density of the
/// given-kind rates at t = 0.
LimitState init_limit(const RateModel& rates, const PastData& past, const SpaceGrid& space, const AgeGrid& age);

/// Implicit Euler: (mu10/dt - Lap) z^{n+1} = (mu10/dt) z^n + S. `source` is
/// empty when absent.
LimitState step_limit(const LimitState& state, std::span<const double> source, double dt, const SpaceGrid& space,
                      LimitStepOptions options = {});

/// Advances to `t_end` with `substeps` equal implicit steps, sampling S at
/// each new time level.
LimitState advance_limit(const LimitState& state, const SourceModel& source, double t_end, int substeps,
                         const SpaceGrid& space, LimitStepOptions options = {});

}  // namespace adhesion
