#include "adhesion/config_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <optional>
#include <sstream>

#include "adhesion/errors.hpp"

namespace adhesion {

namespace {

struct Preset {
  std::string name;
  std::optional<double> arg;
};

// "name" or "name(arg)"
Preset parse_preset(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos) return {text, std::nullopt};
  const auto close = text.find(')', open);
  if (close == std::string::npos) throw ConfigError("malformed preset '" + text + "'");
  const std::string inner = text.substr(open + 1, close - open - 1);
  try {
    std::size_t used = 0;
    const double v = std::stod(inner, &used);
    if (used != inner.size()) throw ConfigError("malformed preset argument in '" + text + "'");
    return {text.substr(0, open), v};
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed preset argument in '" + text + "'");
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (const auto v = node[key]) {
    try {
      out = v.as<T>();
    } catch (const YAML::Exception& e) {
      throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
  }
}

std::string preset_name(const YAML::Node& node) {
  if (node.IsScalar()) return node.as<std::string>();
  if (node.IsMap()) {
    if (node["preset"]) return node["preset"].as<std::string>();
    if (node["kind"]) return node["kind"].as<std::string>();
  }
  throw ConfigError("expected a preset string or a map with 'preset'");
}

void parse_density(const YAML::Node& node, DensitySpec& d) {
  const Preset p = parse_preset(preset_name(node));
  if (p.name == "exp_decay") {
    d.kind = DensitySpec::Kind::exp_decay;
    if (p.arg) d.amplitude = *p.arg;
  } else if (p.name == "constant") {
    d.kind = DensitySpec::Kind::constant;
    if (p.arg) d.amplitude = *p.arg;
  } else if (p.name == "zero") {
    d.kind = DensitySpec::Kind::zero;
  } else {
    throw ConfigError("unknown initial_density preset '" + p.name + "'");
  }
  if (node.IsMap()) {
    read(node, "amplitude", d.amplitude);
    read(node, "rate", d.rate);
  }
}

void parse_past(const YAML::Node& node, PastData& z) {
  const Preset p = parse_preset(preset_name(node));
  if (p.name == "sin_pi") {
    z.kind = PastData::Kind::sin_pi;
    if (p.arg) z.amplitude = *p.arg;
  } else if (p.name == "zero") {
    z.kind = PastData::Kind::zero;
  } else {
    throw ConfigError("unknown past_data preset '" + p.name + "'");
  }
  if (node.IsMap()) {
    read(node, "amplitude", z.amplitude);
    read(node, "time_slope", z.time_slope);
  }
}

void parse_source(const YAML::Node& node, SourceModel& s) {
  const Preset p = parse_preset(preset_name(node));
  if (p.name == "none" || p.name == "zero") {
    s = SourceModel{};
    return;
  }
  s.present = true;
  if (p.name == "constant") {
    s.shape = SourceModel::Shape::uniform;
  } else if (p.name == "sin_pi") {
    s.shape = SourceModel::Shape::sin_pi;
  } else {
    throw ConfigError("unknown source preset '" + p.name + "'");
  }
  if (p.arg) s.value = *p.arg;
  if (node.IsMap()) {
    read(node, "value", s.value);
    read(node, "rate", s.rate);
  }
}

void parse_zeta(const YAML::Node& node, RateModel& r) {
  const Preset p = parse_preset(preset_name(node));
  if (p.name == "constant" || p.name == "given") {
    r.zeta_kind = RateModel::ZetaKind::given;
    if (p.arg) r.zeta0 = *p.arg;
  } else if (p.name == "lipschitz_of_u" || p.name == "one_plus_abs_u") {
    r.zeta_kind = RateModel::ZetaKind::lipschitz_of_u;
    if (p.name == "one_plus_abs_u") {
      r.zeta0 = 1.0;
      r.zeta_lip = 1.0;
    }
    if (p.arg) r.zeta_lip = *p.arg;
  } else {
    throw ConfigError("unknown zeta preset '" + p.name + "'");
  }
  if (node.IsMap()) {
    read(node, "zeta0", r.zeta0);
    read(node, "age_amp", r.zeta_age_amp);
    read(node, "x_amp", r.zeta_x_amp);
    read(node, "lip", r.zeta_lip);
  }
}

void parse_beta(const YAML::Node& node, RateModel& r) {
  const Preset p = parse_preset(preset_name(node));
  if (p.name == "constant" || p.name == "given") {
    r.beta_kind = RateModel::BetaKind::given;
    if (p.arg) r.beta0 = *p.arg;
  } else if (p.name == "threshold") {
    r.beta_kind = RateModel::BetaKind::threshold_on_z;
    if (p.arg) r.threshold = *p.arg;
  } else {
    throw ConfigError("unknown beta preset '" + p.name + "'");
  }
  if (node.IsMap()) {
    read(node, "beta0", r.beta0);
    read(node, "x_amp", r.beta_x_amp);
    read(node, "threshold", r.threshold);
  }
}

}  // namespace

SimulationConfig parse_config(const std::string& yaml_text, SimulationConfig c) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("cannot parse configuration: ") + e.what());
  }
  if (root.IsNull()) return c;
  if (!root.IsMap()) throw ConfigError("configuration root must be a map");

  read(root, "epsilon", c.epsilon);
  read(root, "final_time", c.final_time);
  read(root, "nx", c.nx);
  read(root, "da", c.da);
  read(root, "a_max", c.a_max);
  if (root["mode"]) c.mode = mode_from_string(root["mode"].as<std::string>());
  read(root, "truncation_k", c.truncation_k);
  read(root, "cadence", c.cadence);
  read(root, "seed", c.seed);
  read(root, "limit_substeps", c.limit_substeps);
  read(root, "limit_max_dt", c.limit_max_dt);
  read(root, "report_times", c.report_times);

  if (const auto rm = root["rate_model"]) {
    if (rm["zeta"]) parse_zeta(rm["zeta"], c.rates);
    if (rm["beta"]) parse_beta(rm["beta"], c.rates);
  }
  if (root["initial_density"]) parse_density(root["initial_density"], c.initial_density);
  if (root["past_data"]) parse_past(root["past_data"], c.past);
  if (root["source"]) parse_source(root["source"], c.source);
  return c;
}

SimulationConfig load_config(const std::string& path, SimulationConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string dump_config(const SimulationConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "epsilon" << YAML::Value << c.epsilon;
  out << YAML::Key << "final_time" << YAML::Value << c.final_time;
  out << YAML::Key << "nx" << YAML::Value << c.nx;
  out << YAML::Key << "da" << YAML::Value << c.da;
  out << YAML::Key << "a_max" << YAML::Value << c.a_max;
  out << YAML::Key << "mode" << YAML::Value << to_string(c.mode);
  out << YAML::Key << "truncation_k" << YAML::Value << c.truncation_k;
  out << YAML::Key << "cadence" << YAML::Value << c.cadence;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "limit_substeps" << YAML::Value << c.limit_substeps;
  out << YAML::Key << "limit_max_dt" << YAML::Value << c.limit_max_dt;
  out << YAML::Key << "report_times" << YAML::Value << YAML::Flow << c.report_times;

  const RateModel& r = c.rates;
  out << YAML::Key << "rate_model" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "zeta" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value
      << (r.zeta_kind == RateModel::ZetaKind::given ? "given" : "lipschitz_of_u");
  out << YAML::Key << "zeta0" << YAML::Value << r.zeta0;
  out << YAML::Key << "age_amp" << YAML::Value << r.zeta_age_amp;
  out << YAML::Key << "x_amp" << YAML::Value << r.zeta_x_amp;
  out << YAML::Key << "lip" << YAML::Value << r.zeta_lip;
  out << YAML::EndMap;
  out << YAML::Key << "beta" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value
      << (r.beta_kind == RateModel::BetaKind::given ? "given" : "threshold");
  out << YAML::Key << "beta0" << YAML::Value << r.beta0;
  out << YAML::Key << "x_amp" << YAML::Value << r.beta_x_amp;
  out << YAML::Key << "threshold" << YAML::Value << r.threshold;
  out << YAML::EndMap;
  out << YAML::EndMap;

  const char* dkind = c.initial_density.kind == DensitySpec::Kind::exp_decay ? "exp_decay"
                      : c.initial_density.kind == DensitySpec::Kind::constant ? "constant"
                                                                               : "zero";
  out << YAML::Key << "initial_density" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "preset" << YAML::Value << dkind;
  out << YAML::Key << "amplitude" << YAML::Value << c.initial_density.amplitude;
  out << YAML::Key << "rate" << YAML::Value << c.initial_density.rate;
  out << YAML::EndMap;

  out << YAML::Key << "past_data" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "preset" << YAML::Value << (c.past.kind == PastData::Kind::sin_pi ? "sin_pi" : "zero");
  out << YAML::Key << "amplitude" << YAML::Value << c.past.amplitude;
  out << YAML::Key << "time_slope" << YAML::Value << c.past.time_slope;
  out << YAML::EndMap;

  out << YAML::Key << "source" << YAML::Value << YAML::BeginMap;
  const char* skind = !c.source.present ? "none"
                      : c.source.shape == SourceModel::Shape::uniform ? "constant"
                                                                       : "sin_pi";
  out << YAML::Key << "preset" << YAML::Value << skind;
  out << YAML::Key << "value" << YAML::Value << c.source.value;
  out << YAML::Key << "rate" << YAML::Value << c.source.rate;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace adhesion
