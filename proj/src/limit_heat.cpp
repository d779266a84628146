#include "adhesion/limit_heat.hpp"

#include <cmath>

#include "adhesion/elliptic1d.hpp"
#include "adhesion/errors.hpp"
#include "adhesion/kinetics.hpp"

namespace adhesion {

LimitState init_limit(const RateModel& rates, const PastData& past, const SpaceGrid& space, const AgeGrid& age) {
  LimitState s;
  s.z0.resize(static_cast<std::size_t>(space.nx));
  s.mu10.resize(s.z0.size());
  std::vector<double> zeta(static_cast<std::size_t>(age.size()));
  for (int i = 0; i < space.nx; ++i) {
    const double x = space.interior(i);
    for (int j = 0; j <= age.na; ++j) zeta[static_cast<std::size_t>(j)] = rates.zeta_given(x, age.a(j), 0.0);
    const LimitDensity ld = limit_density(rates.beta_given(x, 0.0), zeta, age);
    s.z0[static_cast<std::size_t>(i)] = past.value(x, 0.0);
    s.mu10[static_cast<std::size_t>(i)] = ld.mu10;
  }
  return s;
}

LimitState step_limit(const LimitState& state, std::span<const double> source, double dt, const SpaceGrid& space,
                      LimitStepOptions options) {
  if (!(dt > 0.0)) throw ConfigError("limit step must be positive");
  const auto n = state.z0.size();
  Field c(n);
  Field rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double mu = state.mu10[i];
    if (!std::isfinite(mu) || mu < 0.0) throw DegenerateFriction("friction coefficient negative or non-finite");
    if (mu <= kMuFloor) {
      if (!options.allow_elliptic) throw DegenerateFriction("friction coefficient below floor at node " + std::to_string(i));
      mu = 0.0;
    }
    c[i] = mu / dt;
    rhs[i] = c[i] * state.z0[i] + (source.empty() ? 0.0 : source[i]);
  }
  LimitState next;
  next.z0 = solve(assemble(c, 1.0, space), rhs);
  next.mu10 = state.mu10;
  next.time = state.time + dt;
  return next;
}

LimitState advance_limit(const LimitState& state, const SourceModel& source, double t_end, int substeps,
                         const SpaceGrid& space, LimitStepOptions options) {
  if (substeps < 1) throw ConfigError("limit substeps must be positive");
  const double h = (t_end - state.time) / substeps;
  LimitState s = state;
  const double t0 = state.time;
  Field S(state.z0.size());
  for (int k = 1; k <= substeps; ++k) {
    const double t = t0 + k * h;
    std::span<const double> src;
    if (source.present) {
      for (int i = 0; i < space.nx; ++i) S[static_cast<std::size_t>(i)] = source.at(space.interior(i), t);
      src = S;
    }
    s = step_limit(s, src, h, space, options);
    s.time = t;
  }
  return s;
}

}  // namespace adhesion
