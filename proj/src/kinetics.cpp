#include "adhesion/kinetics.hpp"

#include <cmath>
#include <sstream>

#include "adhesion/errors.hpp"

namespace adhesion {

DensityField init_density(const DensitySpec& spec, const SpaceGrid& space, const AgeGrid& age,
                          std::vector<std::string>* warnings) {
  DensityField out{AgeField(space.nx, age.size()), 0.0};
  bool all_zero = true;
  for (int i = 0; i < space.nx; ++i) {
    const double x = space.interior(i);
    auto row = out.rho.row(i);
    for (int j = 0; j <= age.na; ++j) {
      const double v = spec.value(x, age.a(j));
      if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "initial density negative or non-finite at x=" << x << ", a=" << age.a(j);
        throw NegativeDensity(os.str());
      }
      row[static_cast<std::size_t>(j)] = v;
      if (v != 0.0) all_zero = false;
    }
    const double mass = trapezoid(age, row);
    if (!(mass < 1.0)) {
      std::ostringstream os;
      os << "initial population " << mass << " >= 1 at x=" << x;
      throw MassAtLeastOne(os.str());
    }
  }
  if (all_zero && warnings != nullptr) warnings->push_back("initial density is identically zero");
  return out;
}

DensityField step_density(const DensityField& rho, const AgeField& zeta_departure, std::span<const double> beta,
                          const AgeGrid& age, double dt) {
  const int nx = rho.rho.nx();
  const int na = age.na;
  DensityField out{AgeField(nx, age.size()), rho.time + dt};
  const double w0 = age.weights.front();
  for (int i = 0; i < nx; ++i) {
    const auto prev = rho.rho.row(i);
    const auto zeta = zeta_departure.row(i);
    auto next = out.rho.row(i);
    double m = 0.0;
    for (int j = 1; j <= na; ++j) {
      const auto k = static_cast<std::size_t>(j);
      const double z = zeta[k - 1];
      if (std::isnan(z)) throw NonfiniteValue("off-rate is NaN");
      next[k] = prev[k - 1] * std::exp(-age.da * z);
      m += age.weights[k] * next[k];
    }
    const double b = beta[static_cast<std::size_t>(i)];
    next[0] = b * (1.0 - m) / (1.0 + b * w0);
    if (!std::isfinite(next[0]) || !std::isfinite(m)) throw NonfiniteValue("density update overflowed");
  }
  return out;
}

MomentField moment(const DensityField& rho, int k, const AgeGrid& age) {
  const int nx = rho.rho.nx();
  MomentField out(static_cast<std::size_t>(nx), 0.0);
  for (int i = 0; i < nx; ++i) {
    const auto row = rho.rho.row(i);
    double s = 0.0;
    for (int j = 0; j <= age.na; ++j) {
      const double a = age.a(j);
      const double ak = k == 0 ? 1.0 : (k == 1 ? a : a * a);
      s += age.weights[static_cast<std::size_t>(j)] * ak * row[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

AgeField sample_given_zeta(const RateModel& rates, const SpaceGrid& space, const AgeGrid& age, double t) {
  AgeField out(space.nx, age.size());
  for (int i = 0; i < space.nx; ++i) {
    const double x = space.interior(i);
    for (int j = 0; j <= age.na; ++j) out(i, j) = rates.zeta_given(x, age.a(j), t);
  }
  return out;
}

Field sample_given_beta(const RateModel& rates, const SpaceGrid& space, double t) {
  Field out(static_cast<std::size_t>(space.nx));
  for (int i = 0; i < space.nx; ++i) out[static_cast<std::size_t>(i)] = rates.beta_given(space.interior(i), t);
  return out;
}

namespace {

template <typename F>
double trapezoid_panels(double lo, double hi, double step, F&& f) {
  if (hi <= lo) return 0.0;
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / step - 1e-9)));
  const double h = (hi - lo) / n;
  double s = 0.5 * (f(lo) + f(hi));
  for (int k = 1; k < n; ++k) s += f(lo + k * h);
  return s * h;
}

}  // namespace

double density_characteristics_oracle(double x, double a, double t, const OracleInputs& in) {
  if (in.rates == nullptr || in.initial == nullptr || in.rates->zeta_kind != RateModel::ZetaKind::given ||
      in.rates->beta_kind != RateModel::BetaKind::given) {
    throw AdhesionError("characteristics oracle needs given-kind rates and an initial density");
  }
  const RateModel& r = *in.rates;
  const double eps = in.epsilon;
  const double tol = 1e-9 * std::max(1.0, a);

  if (a < t / eps - tol) {
    const double birth = t - eps * a;
    const double level = birth / in.dt;
    const long m = std::lround(level);
    if (std::abs(level - static_cast<double>(m)) > 1e-6 || m < 0 ||
        m >= static_cast<long>(in.mu0_history.size())) {
      throw HistoryMissing("no stored population level at t=" + std::to_string(birth));
    }
    const double mu0 = in.mu0_history[static_cast<std::size_t>(m)];
    const double decay =
        trapezoid_panels(0.0, a, in.quad_step, [&](double s) { return r.zeta_given(x, s, t - eps * (a - s)); });
    return r.beta_given(x, birth) * (1.0 - mu0) * std::exp(-decay);
  }
  const double decay = trapezoid_panels(0.0, t, in.quad_step * eps, [&](double s) {
                         return r.zeta_given(x, (s - t) / eps + a, s);
                       }) / eps;
  return in.initial->value(x, a - t / eps) * std::exp(-decay);
}

LimitDensity limit_density(double beta0, std::span<const double> zeta0, const AgeGrid& age) {
  LimitDensity out;
  out.profile.resize(static_cast<std::size_t>(age.size()));
  std::vector<double> survival(out.profile.size());
  double cumulative = 0.0;
  for (std::size_t j = 0; j < survival.size(); ++j) {
    survival[j] = std::exp(-cumulative);
    if (j + 1 < survival.size()) cumulative += age.da * zeta0[j];
  }
  const double K = trapezoid(age, survival);
  out.mu00 = beta0 * K / (1.0 + beta0 * K);
  double first = 0.0;
  for (std::size_t j = 0; j < survival.size(); ++j) {
    out.profile[j] = beta0 * (1.0 - out.mu00) * survival[j];
    first += age.weights[j] * age.a(static_cast<int>(j)) * out.profile[j];
  }
  out.mu10 = first;
  return out;
}

LimitDensity limit_density(double beta0, double zeta0, const AgeGrid& age) {
  const std::vector<double> z(static_cast<std::size_t>(age.size()), zeta0);
  return limit_density(beta0, z, age);
}

}  // namespace adhesion
