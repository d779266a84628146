// Command-line front end: one subcommand per experiment preset.
//
// Exit codes: 0 clean run, 1 configuration or I/O error, 2 invariant violation.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "adhesion/config_io.hpp"
#include "adhesion/errors.hpp"
#include "adhesion/experiments.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string out_dir = "out";
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
  int cadence = 0;
  std::optional<std::uint64_t> seed;
  bool density = false;
  int minimization_steps = 0;
};

int report(const adhesion::RunReport& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& v : r.violations) std::cerr << "invariant violation: " << v << '\n';
  return r.exit_code();
}

int run(adhesion::Preset preset, const Flags& f) {
  using namespace adhesion;
  SimulationConfig cfg = preset_config(preset);
  if (!f.config_path.empty()) cfg = load_config(f.config_path, cfg);
  switch (preset) {
    case Preset::weak: cfg.mode = Mode::weak; break;
    case Preset::weak_source: cfg.mode = Mode::weak_with_source; break;
    case Preset::limit: cfg.mode = Mode::limit; break;
    case Preset::convergence_sweep: cfg.mode = Mode::weak; break;
    case Preset::coupled:
    case Preset::detachment: cfg.mode = Mode::coupled; break;
  }

  RunOptions opts;
  opts.out_dir = f.out_dir;
  opts.cadence = f.cadence;
  opts.seed = f.seed;
  opts.write_density = f.density;
  opts.minimization_steps = f.minimization_steps;

  switch (preset) {
    case Preset::weak:
    case Preset::weak_source: {
      const auto r = run_weak(cfg, opts);
      std::cout << "steps: " << r.steps.t.size() - 1 << ", final energy: " << r.steps.energy.back() << '\n';
      if (r.minimization_checks > 0) {
        std::cout << "minimization: " << r.minimization_violations << " violations in " << r.minimization_checks
                  << " perturbations\n";
      }
      return report(r.report);
    }
    case Preset::limit: return report(run_limit(cfg, opts).report);
    case Preset::convergence_sweep: {
      const auto r = run_convergence_sweep(cfg, f.epsilons, opts);
      std::cout << r.table();
      return report(r.report);
    }
    case Preset::coupled:
    case Preset::detachment: {
      const auto r = preset == Preset::coupled ? run_coupled(cfg, opts) : run_detachment(cfg, opts);
      std::cout << "min u: " << r.min_u << ", elastic balance residual: " << r.balance_residual_max
                << ", truncation active: " << (r.truncation_raised ? "yes" : "no") << '\n';
      return report(r.report);
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-structured adhesion simulator"};
  app.require_subcommand(1);
  Flags flags;
  std::uint64_t seed = 0;

  const std::vector<std::pair<adhesion::Preset, std::string>> presets = {
      {adhesion::Preset::weak, "weakly coupled model, prescribed rates"},
      {adhesion::Preset::weak_source, "weakly coupled model with a load"},
      {adhesion::Preset::limit, "friction-limit heat equation"},
      {adhesion::Preset::coupled, "fully coupled model with elongation-dependent off-rate"},
      {adhesion::Preset::convergence_sweep, "epsilon sweep against the friction limit"},
      {adhesion::Preset::detachment, "threshold on-rate detachment profiles"},
  };
  std::vector<std::pair<CLI::App*, adhesion::Preset>> subs;
  for (const auto& [preset, help] : presets) {
    CLI::App* sub = app.add_subcommand(adhesion::to_string(preset), help);
    sub->add_option("--config", flags.config_path, "YAML configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out_dir, "output directory")->capture_default_str();
    sub->add_option("--cadence", flags.cadence, "output every N steps")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "random seed");
    sub->add_flag("--density", flags.density, "write the final density as CSV");
    if (preset == adhesion::Preset::convergence_sweep) {
      sub->add_option("--epsilons", flags.epsilons, "comma-separated epsilon values")
          ->delimiter(',')
          ->capture_default_str();
    }
    if (preset == adhesion::Preset::weak || preset == adhesion::Preset::weak_source) {
      sub->add_option("--minimization-steps", flags.minimization_steps,
                      "random steps at which the minimization property is checked");
    }
    subs.emplace_back(sub, preset);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (const auto& [sub, preset] : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--seed") > 0) flags.seed = seed;
    try {
      return run(preset, flags);
    } catch (const adhesion::InvariantViolation& e) {
      std::cerr << "invariant violation: " << e.what() << '\n';
      return 2;
    } catch (const adhesion::NonfiniteValue& e) {
      std::cerr << "invariant violation: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}
