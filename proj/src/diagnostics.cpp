#include "adhesion/diagnostics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "adhesion/errors.hpp"

namespace adhesion {

double gradient_energy(std::span<const double> z, const SpaceGrid& space) {
  const auto n = z.size();
  double s = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double left = i > 0 ? z[i - 1] : 0.0;
    const double right = i < n ? z[i] : 0.0;
    const double d = (right - left) / space.dx;
    s += d * d;
  }
  return 0.5 * space.dx * s;
}

double energy(const PositionHistory& hist, long level, const DensityField& rho, std::span<const double> source,
              double epsilon, const SpaceGrid& space, const AgeGrid& age) {
  const auto z = hist.at_level(level);
  double delay = 0.0;
  for (int j = 1; j <= age.na; ++j) {
    const auto past = hist.at_level(level - j);
    const double w = age.weights[static_cast<std::size_t>(j)];
    for (int i = 0; i < space.nx; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double d = z[k] - past[k];
      delay += w * rho.rho(i, j) * d * d;
    }
  }
  double work = 0.0;
  if (!source.empty()) {
    for (std::size_t k = 0; k < z.size(); ++k) work += source[k] * z[k];
  }
  return gradient_energy(z, space) + space.dx * (0.5 * delay / epsilon - work);
}

double energy_from_elongation(std::span<const double> z, const DensityField& rho, const ElongationField& u,
                              std::span<const double> source, double epsilon, const SpaceGrid& space,
                              const AgeGrid& age) {
  double delay = 0.0;
  double work = 0.0;
  for (int i = 0; i < space.nx; ++i) {
    for (int j = 0; j <= age.na; ++j) {
      const double v = u.u(i, j);
      delay += age.weights[static_cast<std::size_t>(j)] * rho.rho(i, j) * v * v;
    }
    if (!source.empty()) work += source[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
  }
  return gradient_energy(z, space) + space.dx * (0.5 * epsilon * delay - work);
}

double dissipation(const DensityField& rho, const ElongationField& u, const AgeField& zeta, const SpaceGrid& space,
                   const AgeGrid& age) {
  double s = 0.0;
  for (int i = 0; i < space.nx; ++i) {
    for (int j = 0; j <= age.na; ++j) {
      const double v = u.u(i, j);
      s += age.weights[static_cast<std::size_t>(j)] * zeta(i, j) * rho.rho(i, j) * v * v;
    }
  }
  return space.dx * s;
}

Field lyapunov_H(const AgeField& f, const AgeGrid& age) {
  Field out(static_cast<std::size_t>(f.nx()));
  for (int i = 0; i < f.nx(); ++i) {
    double signed_sum = 0.0;
    double abs_sum = 0.0;
    for (int j = 0; j < f.n_age(); ++j) {
      const double w = age.weights[static_cast<std::size_t>(j)];
      signed_sum += w * f(i, j);
      abs_sum += w * std::abs(f(i, j));
    }
    out[static_cast<std::size_t>(i)] = std::abs(signed_sum) + abs_sum;
  }
  return out;
}

double stability_functional(const DensityField& rho, const ElongationField& u, const SpaceGrid& space,
                            const AgeGrid& age) {
  double s = 0.0;
  for (int i = 0; i < space.nx; ++i) {
    for (int j = 0; j <= age.na; ++j) {
      s += age.weights[static_cast<std::size_t>(j)] * rho.rho(i, j) * std::abs(u.u(i, j));
    }
  }
  return space.dx * s;
}

std::vector<LimitDensity> limit_density_field(const RateModel& rates, const SpaceGrid& space, const AgeGrid& age,
                                              double t) {
  std::vector<LimitDensity> out;
  out.reserve(static_cast<std::size_t>(space.nx));
  std::vector<double> zeta(static_cast<std::size_t>(age.size()));
  for (int i = 0; i < space.nx; ++i) {
    const double x = space.interior(i);
    for (int j = 0; j <= age.na; ++j) zeta[static_cast<std::size_t>(j)] = rates.zeta_given(x, age.a(j), t);
    out.push_back(limit_density(rates.beta_given(x, t), zeta, age));
  }
  return out;
}

Field rho_convergence_H(const DensityField& rho, std::span<const LimitDensity> limit, const AgeGrid& age) {
  if (limit.size() != static_cast<std::size_t>(rho.rho.nx())) throw GridMismatch("limit density size differs");
  AgeField diff(rho.rho.nx(), rho.rho.n_age());
  for (int i = 0; i < rho.rho.nx(); ++i) {
    const auto& prof = limit[static_cast<std::size_t>(i)].profile;
    if (prof.size() != static_cast<std::size_t>(rho.rho.n_age())) throw GridMismatch("limit profile size differs");
    for (int j = 0; j < rho.rho.n_age(); ++j) diff(i, j) = rho.rho(i, j) - prof[static_cast<std::size_t>(j)];
  }
  return lyapunov_H(diff, age);
}

ElongationField elongation_from_history(const PositionHistory& hist, long level, double epsilon,
                                        const SpaceGrid& space, const AgeGrid& age) {
  ElongationField out{AgeField(space.nx, age.size()), static_cast<double>(level) * hist.dt()};
  const auto z = hist.at_level(level);
  for (int j = 1; j <= age.na; ++j) {
    const auto past = hist.at_level(level - j);
    for (int i = 0; i < space.nx; ++i) {
      const auto k = static_cast<std::size_t>(i);
      out.u(i, j) = (z[k] - past[k]) / epsilon;
    }
  }
  return out;
}

namespace {

bool same_grid(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > 1e-9 * std::max(1.0, std::abs(a[k]))) return false;
  }
  return true;
}

std::vector<double> trapezoid_weights(const std::vector<double>& nodes) {
  std::vector<double> w(nodes.size(), 0.0);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double h = 0.5 * (nodes[k + 1] - nodes[k]);
    w[k] += h;
    w[k + 1] += h;
  }
  return w;
}

}  // namespace

double convergence_error(const Trajectory& a, const Trajectory& b) {
  if (!same_grid(a.x, b.x) || !same_grid(a.t, b.t) || a.z.size() != a.t.size() || b.z.size() != b.t.size()) {
    throw GridMismatch("trajectories are sampled on different (x, t) grids");
  }
  const auto wx = trapezoid_weights(a.x);
  // A single time sample is treated as a unit-length slab.
  const auto wt = a.t.size() == 1 ? std::vector<double>{1.0} : trapezoid_weights(a.t);
  double s = 0.0;
  for (std::size_t n = 0; n < a.t.size(); ++n) {
    if (a.z[n].size() != a.x.size() || b.z[n].size() != a.x.size()) throw GridMismatch("snapshot size differs");
    double row = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
      const double d = a.z[n][i] - b.z[n][i];
      row += wx[i] * d * d;
    }
    s += wt[n] * row;
  }
  return std::sqrt(s);
}

std::string diagnostics_header() {
  return "t,energy,dissipation,mu0_min,mu0_max,stability,lyapunov_H,p,gamma2,truncated";
}

std::string diagnostics_row(const DiagnosticsRecord& r) {
  std::ostringstream os;
  os << std::setprecision(17) << r.t << ',' << r.energy << ',' << r.dissipation << ',' << r.mu0_min << ','
     << r.mu0_max << ',' << r.stability << ',' << r.lyapunov << ',' << r.p << ',' << r.gamma2 << ','
     << (r.truncated ? 1 : 0);
  return os.str();
}

}  // namespace adhesion
