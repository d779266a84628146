#pragma once

#include <string>

#include "adhesion/grid.hpp"

namespace adhesion {

/// Parses a YAML configuration document. Keys mirror SimulationConfig; the
/// analytic inputs accept either a preset string ("sin_pi", "exp_decay",
/// "constant(2.5)", "threshold(1000)") or a map with explicit parameters.
/// Missing keys keep the values already present in `base`.
SimulationConfig parse_config(const std::string& yaml_text, SimulationConfig base = {});

SimulationConfig load_config(const std::string& path, SimulationConfig base = {});

/// Serializes a configuration so that parse_config(dump_config(c)) == c.
std::string dump_config(const SimulationConfig& config);

}  // namespace adhesion
