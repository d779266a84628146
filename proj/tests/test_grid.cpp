#include <doctest.h>

#include <cmath>

#include "adhesion/config_io.hpp"
#include "adhesion/errors.hpp"
#include "adhesion/grid.hpp"

using namespace adhesion;

namespace {

SimulationConfig unit_rates() {
  SimulationConfig c;
  c.epsilon = 0.1;
  c.final_time = 1.0;
  c.nx = 8;
  c.da = 0.01;
  c.a_max = 10.0;
  c.initial_density = DensitySpec{DensitySpec::Kind::exp_decay, 1.0, 1.0};
  return c;
}

}  // namespace

TEST_CASE("validate_config accepts unit rates with an exponential density") {
  const auto vc = validate_config(unit_rates());
  CHECK(vc.steps == 1000);
  CHECK(vc.na == 1000);
  CHECK(vc.dt == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("validate_config rejects a total initial population above one") {
  auto c = unit_rates();
  c.initial_density.amplitude = 2.0;
  try {
    validate_config(c);
    FAIL("expected a violation");
  } catch (const HypothesisViolation& e) {
    CHECK(e.name() == "total initial population");
  }
}

TEST_CASE("time step is eps * da") {
  auto c = unit_rates();
  c.epsilon = 1e-3;
  c.final_time = 1e-2;
  const auto vc = validate_config(c);
  CHECK(vc.dt == doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(vc.steps == 1000);
}

TEST_CASE("grid alignment and bound violations are reported") {
  auto c = unit_rates();
  c.a_max = 10.005;
  CHECK_FALSE(check_config(c).ok());

  c = unit_rates();
  c.final_time = 1.00037;
  CHECK_FALSE(check_config(c).ok());

  c = unit_rates();
  c.rates.zeta0 = 0.0;
  CHECK_FALSE(check_config(c).ok());

  c = unit_rates();
  c.rates.beta0 = 0.0;
  CHECK_FALSE(check_config(c).ok());

  c = unit_rates();
  c.epsilon = -1.0;
  CHECK_THROWS_AS(validate_config(c), HypothesisViolation);
}

TEST_CASE("zero on-rate lower bound is only a warning in coupled mode") {
  auto c = unit_rates();
  c.mode = Mode::coupled;
  c.rates.beta_kind = RateModel::BetaKind::threshold_on_z;
  const auto rep = check_config(c);
  CHECK(rep.ok());
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("Lipschitz off-rate needs coupled mode") {
  auto c = unit_rates();
  c.rates.zeta_kind = RateModel::ZetaKind::lipschitz_of_u;
  CHECK_FALSE(check_config(c).ok());
  c.mode = Mode::coupled;
  CHECK(check_config(c).ok());
}

TEST_CASE("negative initial density is a violation") {
  auto c = unit_rates();
  c.initial_density = DensitySpec{DensitySpec::Kind::constant, -0.01, 1.0};
  const auto rep = check_config(c);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().name == "positivity and boundedness");
}

TEST_CASE("build_grids") {
  SUBCASE("nx = 3") {
    const auto g = make_space_grid(3);
    CHECK(g.dx == 0.25);
    const auto nodes = g.nodes();
    REQUIRE(nodes.size() == 5);
    CHECK(nodes[0] == 0.0);
    CHECK(nodes[1] == 0.25);
    CHECK(nodes[2] == 0.5);
    CHECK(nodes[3] == 0.75);
    CHECK(nodes[4] == 1.0);
  }
  SUBCASE("age grid") {
    const auto a = make_age_grid(0.01, 10.0);
    CHECK(a.na == 1000);
    CHECK(a.weights.front() == doctest::Approx(0.005));
    CHECK(a.weights.back() == doctest::Approx(0.005));
    double total = 0.0;
    for (double w : a.weights) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(total == doctest::Approx(10.0).epsilon(1e-13));
  }
  SUBCASE("time stepping") {
    auto c = unit_rates();
    const auto g = build_grids(validate_config(c));
    CHECK(g.time.steps == 1000);
    CHECK(g.time.dt == doctest::Approx(1e-3));
    CHECK(g.time.history_depth == 1001);
    // delay of the oldest age equals the history span
    CHECK(g.time.dt * g.age.na == doctest::Approx(c.epsilon * c.a_max).epsilon(1e-14));
  }
}

TEST_CASE("make_age_grid rejects a non-integral ratio") {
  CHECK_THROWS_AS(make_age_grid(0.03, 10.0), ConfigError);
  CHECK_THROWS_AS(make_space_grid(0), ConfigError);
}

TEST_CASE("source finite-difference consistency") {
  SourceModel s{true, SourceModel::Shape::uniform, 2.0, 3.0};
  const double h = 1e-6;
  CHECK((s.at(0.3, 1.0 + h) - s.at(0.3, 1.0)) / h == doctest::Approx(s.dt_at(0.3, 1.0)).epsilon(1e-6));
  auto c = unit_rates();
  c.mode = Mode::weak_with_source;
  c.source = s;
  CHECK(check_config(c).ok());
}

TEST_CASE("config parsing round-trips through the dump") {
  const std::string text = R"(
epsilon: 0.001
final_time: 0.01
nx: 128
da: 0.01
a_max: 10
mode: coupled
rate_model:
  zeta: one_plus_abs_u
  beta: threshold(1000)
initial_density: exp_decay
past_data: sin_pi
source: constant(1e4)
report_times: [1e-4, 2e-4, 3e-4]
)";
  const SimulationConfig c = parse_config(text);
  CHECK(c.epsilon == 1e-3);
  CHECK(c.nx == 128);
  CHECK(c.mode == Mode::coupled);
  CHECK(c.rates.zeta_kind == RateModel::ZetaKind::lipschitz_of_u);
  CHECK(c.rates.beta_kind == RateModel::BetaKind::threshold_on_z);
  CHECK(c.rates.threshold == 1000.0);
  CHECK(c.source.present);
  CHECK(c.source.value == 1e4);
  CHECK(c.report_times.size() == 3);

  const SimulationConfig back = parse_config(dump_config(c));
  CHECK(dump_config(back) == dump_config(c));
  CHECK(back.epsilon == c.epsilon);
  CHECK(back.rates.zeta_lip == c.rates.zeta_lip);
  CHECK(back.source.value == c.source.value);
}

TEST_CASE("config parsing errors") {
  CHECK_THROWS_AS(parse_config("epsilon: [1, 2"), ConfigError);
  CHECK_THROWS_AS(parse_config("rate_model:\n  zeta: bogus\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("epsilon: abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mode: sideways\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.yaml"), ConfigError);
}

TEST_CASE("map form of presets") {
  const auto c = parse_config(R"(
rate_model:
  zeta: {preset: constant, zeta0: 2.0, age_amp: 0.5}
  beta: {preset: constant, beta0: 0.5, x_amp: 0.2}
initial_density: {preset: exp_decay, amplitude: 0.5, rate: 2}
)");
  CHECK(c.rates.zeta0 == 2.0);
  CHECK(c.rates.zeta_age_amp == 0.5);
  CHECK(c.rates.beta0 == 0.5);
  CHECK(c.rates.beta_x_amp == 0.2);
  CHECK(c.initial_density.rate == 2.0);
  CHECK(c.rates.zeta_min() == doctest::Approx(2.0));
  CHECK(c.rates.zeta_max() == doctest::Approx(3.0));
  CHECK(c.rates.beta_max() == doctest::Approx(0.6));
}
