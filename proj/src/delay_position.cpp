#include "adhesion/delay_position.hpp"

#include <string>

#include "adhesion/elliptic1d.hpp"
#include "adhesion/errors.hpp"

namespace adhesion {

PositionHistory::PositionHistory(const SpaceGrid& space, const AgeGrid& age, const PastData& past, double dt)
    : ring_(static_cast<std::size_t>(age.size())), past_(static_cast<std::size_t>(age.size())), dt_(dt) {
  for (int k = 0; k <= age.na; ++k) {
    Field& f = past_[static_cast<std::size_t>(k)];
    f.resize(static_cast<std::size_t>(space.nx));
    for (int i = 0; i < space.nx; ++i) f[static_cast<std::size_t>(i)] = past.value(space.interior(i), -k * dt);
  }
}

void PositionHistory::push(Field z) {
  ++level_;
  const auto slot = static_cast<std::size_t>(level_) % ring_.size();
  ring_[slot] = std::move(z);
}

std::span<const double> PositionHistory::at_level(long m) const {
  if (m < 0) {
    const auto k = static_cast<std::size_t>(-m);
    if (k >= past_.size()) throw HistoryMissing("level " + std::to_string(m) + " is older than the age cutoff");
    return past_[k];
  }
  if (m > level_ || level_ - m >= static_cast<long>(ring_.size())) {
    throw HistoryMissing("level " + std::to_string(m) + " not stored (newest " + std::to_string(level_) + ")");
  }
  return ring_[static_cast<std::size_t>(m) % ring_.size()];
}

HistoryIntegral history_integral(const PositionHistory& hist, const DensityField& rho, const AgeGrid& age) {
  const int nx = rho.rho.nx();
  const long target = hist.level() + 1;
  HistoryIntegral out{Field(static_cast<std::size_t>(nx), 0.0), Field(static_cast<std::size_t>(nx), 0.0)};
  for (int j = 1; j <= age.na; ++j) {
    const auto z = hist.at_level(target - j);
    const double w = age.weights[static_cast<std::size_t>(j)];
    for (int i = 0; i < nx; ++i) out.delayed[static_cast<std::size_t>(i)] += w * rho.rho(i, j) * z[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < nx; ++i) out.implicit_weight[static_cast<std::size_t>(i)] = age.weights[0] * rho.rho(i, 0);
  return out;
}

Field initial_position(const DensityField& rho_initial, const PastData& past, std::span<const double> source,
                       double epsilon, const SpaceGrid& space, const AgeGrid& age, bool implicit_origin) {
  Field c(static_cast<std::size_t>(space.nx), 0.0);
  Field rhs(static_cast<std::size_t>(space.nx), 0.0);
  const int first = implicit_origin ? 1 : 0;
  for (int i = 0; i < space.nx; ++i) {
    const double x = space.interior(i);
    double s = 0.0;
    double m = 0.0;
    for (int j = first; j <= age.na; ++j) {
      m += age.weights[static_cast<std::size_t>(j)] * rho_initial.rho(i, j);
      s += age.weights[static_cast<std::size_t>(j)] * rho_initial.rho(i, j) * past.value(x, -epsilon * age.a(j));
    }
    if (!source.empty()) s += epsilon * source[static_cast<std::size_t>(i)];
    rhs[static_cast<std::size_t>(i)] = s;
    c[static_cast<std::size_t>(i)] = m;
  }
  return solve(assemble(c, epsilon, space), rhs);
}

Field step_position(const DensityField& rho_next, PositionHistory& hist, std::span<const double> source,
                    double epsilon, const SpaceGrid& space, const AgeGrid& age) {
  HistoryIntegral hi = history_integral(hist, rho_next, age);
  // mu_0 - w_0 rho_0, summed directly so that rounding cannot make it negative
  Field c(static_cast<std::size_t>(space.nx), 0.0);
  for (int i = 0; i < space.nx; ++i) {
    const auto row = rho_next.rho.row(i);
    double m = 0.0;
    for (int j = 1; j <= age.na; ++j) m += age.weights[static_cast<std::size_t>(j)] * row[static_cast<std::size_t>(j)];
    c[static_cast<std::size_t>(i)] = m;
    if (!source.empty()) hi.delayed[static_cast<std::size_t>(i)] += epsilon * source[static_cast<std::size_t>(i)];
  }
  Field z = solve(assemble(c, epsilon, space), hi.delayed);
  hist.push(z);
  return z;
}

Field volterra_residual(const PositionHistory& hist, long level, const DensityField& rho, std::span<const double> z,
                        std::span<const double> source, double epsilon, const SpaceGrid& space,
                        const AgeGrid& age) {
  const auto nx = static_cast<std::size_t>(space.nx);
  Field L(nx, 0.0);
  for (int j = 1; j <= age.na; ++j) {
    const auto past = hist.at_level(level - j);
    const double w = age.weights[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < nx; ++i) {
      L[i] += w * rho.rho(static_cast<int>(i), j) * (z[i] - past[i]);
    }
  }
  const Field lap = laplacian(z, space.dx);
  Field out(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    out[i] = L[i] / epsilon - lap[i] - (source.empty() ? 0.0 : source[i]);
  }
  return out;
}

}  // namespace adhesion
