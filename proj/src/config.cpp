#include "attractor/config.hpp"

#include "attractor/error.hpp"

namespace attractor {

using nlohmann::json;

namespace {

double number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("missing required field '") + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number(obj, key) : fallback;
}

std::optional<double> optional_number(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number(obj, key);
}

const json& object(const json& parent, const char* key) {
  if (!parent.contains(key)) throw ConfigError(std::string("missing required section '") + key + "'");
  const auto& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(std::string("section '") + key + "' must be an object");
  return v;
}

std::vector<int> int_list(const json& v, const char* what) {
  std::vector<int> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<int>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError(std::string(what) + " must hold integers");
      out.push_back(e.get<int>());
    }
  } else {
    throw ConfigError(std::string(what) + " must be an integer or an array of integers");
  }
  return out;
}

CGLParams parse_params(const json& p) {
  CGLParams out;
  out.lambda = number(p, "lambda");
  out.alpha = number_or(p, "alpha", 0.0);
  out.kappa = number(p, "kappa");
  out.beta = number_or(p, "beta", 0.0);
  out.gamma = number(p, "gamma");
  out.validate();
  return out;
}

InitialCondition parse_initial(const json& j) {
  const std::string type = j.value("type", "single_mode");
  if (type == "single_mode") {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::single_mode;
    ic.mode = j.contains("k") ? int_list(j.at("k"), "initial_condition.k") : std::vector<int>{1};
    ic.amplitude = number_or(j, "amplitude", 1.0);
    return ic;
  }
  if (type == "random_smooth") {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::random_smooth;
    const auto& seed = j.contains("seed") ? j.at("seed") : json(0);
    if (!seed.is_number_integer() || seed.get<std::int64_t>() < 0) {
      throw ConfigError("initial_condition.seed must be a nonnegative integer");
    }
    ic.seed = seed.get<std::uint64_t>();
    ic.decay_rate = number_or(j, "decay_rate", 0.5);
    ic.amplitude = number_or(j, "amplitude", 1.0);
    return ic;
  }
  if (type == "zero") {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::zero;
    return ic;
  }
  throw ConfigError("unknown initial_condition type '" + type + "'");
}

SimConfig parse_sim(const json& s, const Domain& domain) {
  SimConfig cfg;
  cfg.domain = domain;
  if (!s.contains("modes_per_axis")) throw ConfigError("sim.modes_per_axis is required");
  cfg.modes_per_axis = int_list(s.at("modes_per_axis"), "sim.modes_per_axis");
  if (domain.dimension() == 2 && cfg.modes_per_axis.size() == 1) {
    cfg.modes_per_axis.push_back(cfg.modes_per_axis.front());
  }
  if (cfg.modes_per_axis.size() != static_cast<std::size_t>(domain.dimension())) {
    throw ConfigError("sim.modes_per_axis must have one entry per dimension");
  }
  cfg.dt = number(s, "dt");
  cfg.t_end = number(s, "t_end");
  cfg.burn_in = number_or(s, "burn_in", 0.0);
  if (s.contains("initial_condition")) cfg.initial = parse_initial(s.at("initial_condition"));
  const double m = number_or(s, "tangent_count", 0.0);
  if (m < 0.0 || m != static_cast<double>(static_cast<std::size_t>(m))) {
    throw ConfigError("sim.tangent_count must be a nonnegative integer");
  }
  cfg.tangent_count = static_cast<std::size_t>(m);
  cfg.reorth_interval = static_cast<int>(number_or(s, "reorth_interval", 10.0));
  cfg.overflow_guard = number_or(s, "overflow_guard", 1e12);
  cfg.validate();
  return cfg;
}

}  // namespace

MethodConstants RunConfig::constants() const { return MethodConstants::make(domain.dimension(), c, C_star); }

const CGLParams& RunConfig::require_params() const {
  if (!params) throw ConfigError("command '" + command + "' needs a 'params' section");
  return *params;
}

Domain parse_domain(const json& j) {
  if (!j.is_object()) throw ConfigError("'domain' must be an object");
  const std::string kind = j.value("kind", "");
  if (kind == "box") {
    if (!j.contains("sides") || !j.at("sides").is_array()) {
      throw ConfigError("box domain needs a 'sides' array");
    }
    std::vector<double> sides;
    for (const auto& s : j.at("sides")) {
      if (!s.is_number()) throw ConfigError("box sides must be numbers");
      sides.push_back(s.get<double>());
    }
    return Domain::box(std::move(sides));
  }
  if (kind == "ball") {
    const double n = number(j, "n");
    if (n < 1 || n != static_cast<int>(n)) throw ConfigError("ball 'n' must be a positive integer");
    return Domain::ball(static_cast<int>(n), number(j, "radius"));
  }
  throw ConfigError("domain kind must be 'box' or 'ball'");
}

json domain_to_json(const Domain& d) {
  if (d.is_box()) {
    return {{"kind", "box"}, {"sides", std::vector<double>(d.sides().begin(), d.sides().end())}};
  }
  return {{"kind", "ball"}, {"n", d.dimension()}, {"radius", d.radius()}};
}

void apply_overrides(json& doc, const Overrides& o) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (o.gamma) doc["params"]["gamma"] = *o.gamma;
  if (o.c) doc["consts"]["c"] = *o.c;
  if (o.m_max) doc["spectrum"]["m_max"] = *o.m_max;
  if (o.dt) doc["sim"]["dt"] = *o.dt;
  if (o.t_end) doc["sim"]["t_end"] = *o.t_end;
  if (o.seed) {
    auto& ic = doc["sim"]["initial_condition"];
    if (!ic.is_object()) ic = json::object();
    ic["seed"] = *o.seed;
  }
  if (o.out) doc["output_dir"] = *o.out;
}

RunConfig parse_run_config(const json& doc, const std::string& command) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  cfg.command = command;
  cfg.resolved = doc;
  cfg.resolved["command"] = command;
  cfg.domain = parse_domain(object(doc, "domain"));
  cfg.resolved["domain"] = domain_to_json(cfg.domain);

  const auto& consts = object(doc, "consts");
  cfg.c = number(consts, "c");
  cfg.C_star = optional_number(consts, "C_star");
  // Validates the c window and C_star sign up front.
  (void)cfg.constants();

  if (doc.contains("params")) cfg.params = parse_params(object(doc, "params"));
  if (doc.contains("spectrum")) {
    const double m = number_or(object(doc, "spectrum"), "m_max", 1000.0);
    if (m < 1 || m != static_cast<double>(static_cast<std::size_t>(m))) {
      throw ConfigError("spectrum.m_max must be a positive integer");
    }
    cfg.m_max = static_cast<std::size_t>(m);
  }
  if (doc.contains("bounds")) {
    const auto& b = object(doc, "bounds");
    cfg.delta = optional_number(b, "delta");
    cfg.Lambda1 = optional_number(b, "Lambda1");
    if (cfg.delta && !(*cfg.delta >= 0.0)) throw ConfigError("bounds.delta must be nonnegative");
    if (cfg.Lambda1 && !(*cfg.Lambda1 > 0.0)) throw ConfigError("bounds.Lambda1 must be positive");
  }
  if (doc.contains("sim")) cfg.sim = parse_sim(object(doc, "sim"), cfg.domain);
  if (doc.contains("sweep")) {
    const auto& sw = doc.at("sweep");
    if (!sw.is_array()) throw ConfigError("'sweep' must be an array of override objects");
    for (const auto& e : sw) {
      if (!e.is_object()) throw ConfigError("each sweep entry must be an object");
      cfg.sweep.push_back(e);
    }
  }
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
    cfg.output_dir = doc.at("output_dir").get<std::string>();
  }

  if (command == "bounds" || command == "simulate" || command == "report") cfg.require_params();
  if (command == "bounds" || command == "report") {
    if (!cfg.C_star) throw ConfigError("consts.C_star is required for command '" + command + "'");
    if (!cfg.domain.is_box() && !cfg.Lambda1) {
      throw ConfigError("bounds.Lambda1 must be supplied for a ball domain");
    }
  }
  if ((command == "simulate" || command == "report") && !cfg.sim) {
    throw ConfigError("command '" + command + "' needs a 'sim' section");
  }
  if (command == "spectrum" && !cfg.domain.is_box()) {
    throw ConfigError("the spectrum command needs a box domain");
  }
  for (const auto& e : cfg.sweep) (void)apply_sweep_entry(cfg, e);
  return cfg;
}

SweepPoint apply_sweep_entry(const RunConfig& cfg, const json& entry) {
  SweepPoint pt;
  pt.params = cfg.require_params();
  pt.c = cfg.c;
  pt.C_star = cfg.C_star;
  pt.delta = cfg.delta.value_or(0.0);
  for (const auto& [key, value] : entry.items()) {
    if (!value.is_number()) throw ConfigError("sweep override '" + key + "' must be a number");
    const double v = value.get<double>();
    if (key == "lambda") pt.params.lambda = v;
    else if (key == "alpha") pt.params.alpha = v;
    else if (key == "kappa") pt.params.kappa = v;
    else if (key == "beta") pt.params.beta = v;
    else if (key == "gamma") pt.params.gamma = v;
    else if (key == "c") pt.c = v;
    else if (key == "C_star") pt.C_star = v;
    else if (key == "delta") pt.delta = v;
    else throw ConfigError("unknown sweep override '" + key + "'");
  }
  pt.params.validate();
  (void)MethodConstants::make(cfg.domain.dimension(), pt.c, pt.C_star);
  if (!(pt.delta >= 0.0)) throw ConfigError("sweep delta must be nonnegative");
  return pt;
}

}  // namespace attractor
