#include <doctest.h>

#include <cmath>
#include <numbers>

#include "adhesion/coupled.hpp"
#include "adhesion/delay_position.hpp"
#include "adhesion/elliptic1d.hpp"
#include "adhesion/errors.hpp"
#include "adhesion/experiments.hpp"

using namespace adhesion;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

SimulationConfig moderate_coupled(double da = 0.01) {
  SimulationConfig c = preset_config(Preset::coupled);
  c.epsilon = 0.01;
  c.da = da;
  c.final_time = 0.05;
  c.nx = 32;
  c.rates.beta_kind = RateModel::BetaKind::given;
  c.rates.beta0 = 1.0;
  c.source = SourceModel{true, SourceModel::Shape::uniform, 10.0, 0.0};
  return c;
}

CoupledContext context_for(const SimulationConfig& c) {
  const auto vc = validate_config(c);
  const auto g = build_grids(vc);
  return CoupledContext{g.space, g.age, c.epsilon, vc.dt};
}

}  // namespace

TEST_CASE("initial elongation") {
  const auto g = make_space_grid(16);
  const auto age = make_age_grid(0.01, 10.0);
  const double eps = 0.05;
  SUBCASE("constant past and matching position") {
    const PastData past{};
    Field z0(g.nx);
    for (int i = 0; i < g.nx; ++i) z0[i] = past.value(g.interior(i), 0.0);
    const auto u = init_elongation(z0, past, eps, g, age);
    for (double v : u.u.values()) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("past linear in time") {
    const PastData past{PastData::Kind::sin_pi, 1.0, 1.0};
    Field z0(g.nx, 0.3);
    const auto u = init_elongation(z0, past, eps, g, age);
    for (int i = 0; i < g.nx; i += 3) {
      const double s = std::sin(kPi * g.interior(i)) / kPi;
      CHECK(u.u(i, 0) == 0.0);
      for (int j = 1; j <= age.na; j += 97) {
        CHECK(u.u(i, j) == doctest::Approx((0.3 - s * (1.0 - eps * age.a(j))) / eps).epsilon(1e-12));
        const double bound = std::abs(0.3 - past.value(g.interior(i), 0.0)) / eps + past.lipschitz(g.interior(i)) * age.a(j);
        CHECK(std::abs(u.u(i, j)) <= bound * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("elongation transport") {
  const auto age = make_age_grid(0.1, 2.0);
  ElongationField u{AgeField(3, age.size()), 0.0};
  for (int j = 0; j <= age.na; ++j) u.u(1, j) = j;
  const auto shifted = step_elongation(u, Field(3, 0.0), age, 1e-3);
  for (int j = 1; j <= age.na; ++j) CHECK(shifted.u(1, j) == j - 1);
  CHECK(shifted.u(1, 0) == 0.0);

  ElongationField zero{AgeField(3, age.size()), 0.0};
  const auto one = step_elongation(zero, Field(3, 2.0), age, 1e-3);
  for (int j = 1; j <= age.na; ++j) CHECK(one.u(0, j) == doctest::Approx(0.2));

  ElongationField w = zero;
  for (int n = 0; n < 3 * age.na; ++n) w = step_elongation(w, Field(3, 2.0), age, 1e-3);
  for (int j = 0; j <= age.na; ++j) CHECK(w.u(2, j) == doctest::Approx(2.0 * age.a(j)).epsilon(1e-12));
}

TEST_CASE("velocity solve") {
  const auto g = make_space_grid(64);
  const auto age = make_age_grid(0.01, 10.0);
  RateModel rates;
  rates.zeta_kind = RateModel::ZetaKind::lipschitz_of_u;
  const double eps = 1e-2;

  SUBCASE("no elongation, no load") {
    const auto rho = init_density(DensitySpec{}, g, age);
    ElongationField u{AgeField(g.nx, age.size()), 0.0};
    for (double v : solve_velocity(rho, u, rates, {}, eps, g, age)) CHECK(v == 0.0);
  }
  SUBCASE("no bonds: Poisson problem for the load rate") {
    const auto rho = init_density(DensitySpec{DensitySpec::Kind::zero, 0.0, 0.0}, g, age);
    ElongationField u{AgeField(g.nx, age.size()), 0.0};
    Field ds(g.nx);
    for (int i = 0; i < g.nx; ++i) ds[i] = kPi * kPi * std::sin(kPi * g.interior(i));
    const Field v = solve_velocity(rho, u, rates, ds, eps, g, age);
    for (int i = 0; i < g.nx; ++i) CHECK(std::abs(v[i] - std::sin(kPi * g.interior(i))) <= g.dx * g.dx);
  }
  SUBCASE("linear elongation profile") {
    const double G = 0.7;
    const auto rho = init_density(DensitySpec{DensitySpec::Kind::exp_decay, 0.5, 1.0}, g, age);
    ElongationField u{AgeField(g.nx, age.size()), 0.0};
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j <= age.na; ++j) u.u(i, j) = G * age.a(j);
    }
    const Field v = solve_velocity(rho, u, rates, {}, eps, g, age);
    const Field applied = adhesion::apply(assemble(moment(rho, 0, age), eps, g), v);
    for (int i = 0; i < g.nx; i += 9) CHECK(applied[i] == doctest::Approx(0.5 * G * (1.0 + 2.0 * G)).epsilon(1e-3));
  }
}

TEST_CASE("coupled step keeps the all-zero state") {
  SimulationConfig c = moderate_coupled();
  c.rates.beta0 = 0.0;
  const auto ctx = context_for(c);
  CoupledState s;
  s.rho = DensityField{AgeField(ctx.space.nx, ctx.age.size()), 0.0};
  s.u = ElongationField{AgeField(ctx.space.nx, ctx.age.size()), 0.0};
  s.z.assign(ctx.space.nx, 0.0);
  s.g.assign(ctx.space.nx, 0.0);
  s.beta.assign(ctx.space.nx, 0.0);
  for (int n = 0; n < 5; ++n) s = coupled_step(s, SourceModel{}, c.rates, ctx);
  for (double v : s.rho.rho.values()) CHECK(v == 0.0);
  for (double v : s.u.u.values()) CHECK(v == 0.0);
  for (double v : s.z) CHECK(v == 0.0);
  CHECK(s.level == 5);
}

TEST_CASE("coupled steps: elastic balance, positivity and saturation") {
  const SimulationConfig c = moderate_coupled();
  const auto ctx = context_for(c);
  CoupledState s = init_coupled(c, ctx);
  double u_lo = 0.0;
  for (double v : s.u.u.values()) u_lo = std::min(u_lo, v);
  REQUIRE(u_lo >= 0.0);
  for (int n = 0; n < 500; ++n) {
    s = coupled_step(s, c.source, c.rates, ctx);
    const Field S = sample_source(c.source, ctx.space, s.time);
    const Field bal = elastic_balance_residual(s, S, ctx);
    REQUIRE(max_abs(bal) <= 1e-10 * (max_abs(S) + max_abs(laplacian(s.z, ctx.space.dx))));
    for (double v : s.u.u.values()) REQUIRE(v >= -1e-12);
    for (double v : moment(s.rho, 0, ctx.age)) REQUIRE(v < 1.0);
    for (double v : s.rho.rho.values()) REQUIRE(v >= 0.0);
  }
}

TEST_CASE("truncation clamps the velocity and raises the flag") {
  SimulationConfig c = moderate_coupled();
  const auto ctx = context_for(c);
  CoupledState s = init_coupled(c, ctx);
  s.truncation_k = 1e-6;
  s = coupled_step(s, c.source, c.rates, ctx);
  CHECK(s.truncated);
  CHECK(max_abs(s.g) <= 1e-6);

  const auto run = run_coupled(c);
  CHECK_FALSE(run.truncation_raised);
  CHECK_FALSE(run.monitor.violated);
}

TEST_CASE("population ODE residual") {
  const auto g = make_space_grid(16);
  const auto age = make_age_grid(0.01, 10.0);
  CoupledContext ctx{g, age, 0.01, 1e-4};
  CoupledState a;
  a.rho = DensityField{AgeField(g.nx, age.size()), 0.0};
  a.z.assign(g.nx, 0.0);
  CoupledState b = a;
  b.time = 1e-4;
  for (double v : mu_ode_residual(a, b, {}, Field(g.nx, 0.0), ctx.epsilon, ctx)) CHECK(v == 0.0);

  // steady profile: mu = beta/(beta+1), -Lap z = S
  const Field beta(g.nx, 1.0);
  const Field S(g.nx, 3.0);
  const auto prof = asymptotic_profile(beta, S, g);
  a.rho = DensityField{AgeField(g.nx, age.size(), 0.05), 0.0};  // trapezoid mass exactly 1/2
  a.z = prof.z;
  b.rho = a.rho;
  b.z = prof.z;
  for (double v : mu_ode_residual(a, b, S, beta, ctx.epsilon, ctx)) CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("population ODE residual shrinks under refinement") {
  auto residual_at = [](double da) {
    SimulationConfig c = moderate_coupled(da);
    const auto ctx = context_for(c);
    CoupledState s = init_coupled(c, ctx);
    const long target = std::lround(0.02 / ctx.dt);
    double worst = 0.0;
    for (long n = 0; n < target; ++n) {
      const CoupledState next = coupled_step(s, c.source, c.rates, ctx);
      if (n + 1 == target) {
        const Field S = sample_source(c.source, ctx.space, next.time);
        worst = max_abs(mu_ode_residual(s, next, S, next.beta, ctx.epsilon, ctx));
      }
      s = next;
    }
    return worst;
  };
  const double coarse = residual_at(0.02);
  const double fine = residual_at(0.01);
  CHECK(fine < coarse);
}

TEST_CASE("asymptotic profile") {
  const auto g = make_space_grid(64);
  const auto one = asymptotic_profile(Field(g.nx, 1.0), {}, g);
  for (double v : one.mu) CHECK(v == 0.5);
  for (double v : one.z) CHECK(v == 0.0);
  const auto none = asymptotic_profile(Field(g.nx, 0.0), {}, g);
  for (double v : none.mu) CHECK(v == 0.0);
  Field S(g.nx);
  for (int i = 0; i < g.nx; ++i) S[i] = kPi * kPi * std::sin(kPi * g.interior(i));
  const auto p = asymptotic_profile(Field(g.nx, 1.0), S, g);
  for (int i = 0; i < g.nx; ++i) CHECK(std::abs(p.z[i] - std::sin(kPi * g.interior(i))) <= g.dx * g.dx);
}

TEST_CASE("Riccati bound") {
  CHECK(riccati_gamma2(0.0, 1.0, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(riccati_gamma2(5.0, 1.0, 0.0, 1.0) == 5.0);
  CHECK(riccati_gamma2(0.0, 1.0, 1.0, 1.0) == doctest::Approx((0.5 + std::sqrt(4.25)) / 2.0));
  CHECK(riccati_gamma2(0.0, 1.0, 1.0, 1.0) == doctest::Approx(1.2808).epsilon(1e-4));
  CHECK_THROWS_AS(riccati_gamma2(0.0, 0.0, 1.0, 1.0), NonpositiveGamma1);
  CHECK_THROWS_AS(riccati_gamma2(0.0, -1.0, 1.0, 1.0), NonpositiveGamma1);
}

TEST_CASE("H^-1 norm of the sine mode") {
  const auto g = make_space_grid(128);
  Field f(g.nx);
  for (int i = 0; i < g.nx; ++i) f[i] = std::sin(kPi * g.interior(i));
  // ||sin||_{H^-1}^2 = (1/2) / pi^2
  CHECK(h_minus1_norm(f, g) == doctest::Approx(std::sqrt(0.5) / kPi).epsilon(1e-3));
  CHECK(h_minus1_norm({}, g) == 0.0);
}
