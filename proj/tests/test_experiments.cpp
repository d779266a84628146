#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "adhesion/errors.hpp"
#include "adhesion/experiments.hpp"

using namespace adhesion;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("adhesion_test_" + name);
  fs::remove_all(p);
  return p;
}

SimulationConfig short_weak() {
  SimulationConfig c = preset_config(Preset::weak);
  c.final_time = 0.05;
  c.nx = 24;
  return c;
}

}  // namespace

TEST_CASE("preset names round-trip") {
  for (Preset p : {Preset::weak, Preset::weak_source, Preset::limit, Preset::coupled, Preset::convergence_sweep,
                   Preset::detachment}) {
    CHECK(preset_from_string(to_string(p)) == p);
    CHECK(check_config(preset_config(p)).ok());
  }
  CHECK_THROWS_AS(preset_from_string("bogus"), ConfigError);
}

TEST_CASE("detachment preset constants") {
  const SimulationConfig c = preset_config(Preset::detachment);
  CHECK(c.epsilon == 1e-3);
  CHECK(c.nx == 128);
  CHECK(c.da == 1e-2);
  CHECK(c.a_max == 10.0);
  CHECK(c.source.present);
  CHECK(c.source.value == 1e4);
  CHECK(c.rates.threshold == 1000.0);
  CHECK(c.rates.beta_kind == RateModel::BetaKind::threshold_on_z);
  CHECK(c.rates.zeta_kind == RateModel::ZetaKind::lipschitz_of_u);
  CHECK(c.initial_density.amplitude == 1.0);
}

TEST_CASE("identical configuration and seed give byte-identical outputs") {
  RunOptions o;
  o.seed = 7;
  o.minimization_steps = 2;
  o.minimization_perturbations = 5;
  o.write_density = true;
  o.out_dir = scratch("det_a");
  run_weak(short_weak(), o);
  const fs::path a = o.out_dir;
  o.out_dir = scratch("det_b");
  run_weak(short_weak(), o);
  for (const char* f : {"trajectory.csv", "diagnostics.csv", "density.csv", "run_info.txt", "config_used.yaml"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(o.out_dir / f));
  }
}

TEST_CASE("zero past data gives the zero trajectory") {
  SimulationConfig c = short_weak();
  c.past = PastData{PastData::Kind::zero, 0.0, 0.0};
  const auto r = run_weak(c);
  for (const auto& row : r.trajectory.z) {
    for (double v : row) CHECK(v == 0.0);
  }
}

TEST_CASE("population lower bound with beta_m = 1/2, zeta_M = 1") {
  SimulationConfig c = short_weak();
  c.final_time = 0.2;
  c.initial_density = DensitySpec{DensitySpec::Kind::exp_decay, 0.05, 1.0};
  c.rates.beta0 = 0.5;
  c.rates.beta_x_amp = 1.0;
  const auto r = run_weak(c);
  CHECK(r.report.violations.empty());
  for (std::size_t i = 0; i < r.mu0_lowest.size(); ++i) {
    CHECK(r.mu0_lowest[i] >= std::min(r.mu0_initial[i], 1.0 / 3.0) - 10.0 * c.da);
  }
  for (double v : r.steps.mu0_max) CHECK(v < 1.0);
}

TEST_CASE("convergence sweep with one epsilon") {
  SimulationConfig c = preset_config(Preset::convergence_sweep);
  c.final_time = 0.05;
  c.nx = 16;
  const auto r = run_convergence_sweep(c, {0.1});
  REQUIRE(r.rows.size() == 1);
  CHECK_FALSE(r.rows[0].order.has_value());
  CHECK(r.rows[0].error > 0.0);
  std::istringstream table(r.table());
  std::string header;
  std::getline(table, header);
  CHECK(header.find("order") == std::string::npos);
}

TEST_CASE("limit trajectory against itself") {
  SimulationConfig c = preset_config(Preset::limit);
  c.final_time = 0.05;
  c.nx = 16;
  const auto r = run_limit(c);
  REQUIRE(r.trajectory.t.size() > 1);
  CHECK(convergence_error(r.trajectory, r.trajectory) == 0.0);
  CHECK(r.report.violations.empty());
}

TEST_CASE("run reports map to exit codes") {
  RunReport r;
  CHECK(r.exit_code() == 0);
  r.warnings.push_back("soft");
  CHECK(r.exit_code() == 0);
  r.violations.push_back("hard");
  CHECK(r.exit_code() == 2);
}

TEST_CASE("detachment without a reachable threshold keeps every bond population alive") {
  SimulationConfig c = preset_config(Preset::detachment);
  c.final_time = 2e-3;
  c.nx = 32;
  c.rates.threshold = 1e300;
  const auto r = run_coupled(c);
  CHECK(r.report.violations.empty());
  for (double v : r.final_state.beta) CHECK(v == 1.0);
  for (double v : r.steps.mu0_min) CHECK(v > 0.0);
  CHECK(r.steps.mu0_min.back() > 0.4);
}

TEST_CASE("coupled run writes its outputs and reports profiles") {
  SimulationConfig c = preset_config(Preset::coupled);
  c.final_time = 0.01;
  c.nx = 16;
  c.report_times = {0.005};
  RunOptions o;
  o.out_dir = scratch("coupled");
  const auto r = run_coupled(c, o);
  CHECK(r.report.exit_code() == 0);
  CHECK(r.reports.size() == 2);
  CHECK(r.min_u >= -1e-12);
  for (const char* f : {"trajectory.csv", "diagnostics.csv", "run_info.txt", "config_used.yaml"}) {
    CHECK(fs::exists(o.out_dir / f));
  }
}
