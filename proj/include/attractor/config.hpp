#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "attractor/bounds.hpp"
#include "attractor/geometry.hpp"
#include "attractor/simulator.hpp"
#include "attractor/spectrum.hpp"

namespace attractor {

/// Scalar command-line overrides applied on top of the JSON config.
struct Overrides {
  std::optional<double> gamma;
  std::optional<double> c;
  std::optional<std::size_t> m_max;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

/// A fully resolved run. `resolved` is the config document after overrides,
/// echoed verbatim into every JSON output.
struct RunConfig {
  std::string command;
  Domain domain = Domain::box({1.0});
  std::optional<CGLParams> params;
  double c = 0.0;
  std::optional<double> C_star;
  std::size_t m_max = 1000;
  std::optional<double> delta;
  std::optional<double> Lambda1;
  std::optional<SimConfig> sim;
  std::vector<nlohmann::json> sweep;
  std::filesystem::path output_dir = ".";
  nlohmann::json resolved;

  MethodConstants constants() const;
  /// Params, or ConfigError naming the command that needs them.
  const CGLParams& require_params() const;
};

Domain parse_domain(const nlohmann::json& j);
nlohmann::json domain_to_json(const Domain& d);

/// Applies overrides to a raw document (before parsing).
void apply_overrides(nlohmann::json& doc, const Overrides& o);

/// Parses and validates; throws ConfigError on any schema or range problem.
RunConfig parse_run_config(const nlohmann::json& doc, const std::string& command);

/// Parameter point = base params/consts/delta with one sweep entry applied.
struct SweepPoint {
  CGLParams params;
  double c = 0.0;
  std::optional<double> C_star;
  double delta = 0.0;
};
SweepPoint apply_sweep_entry(const RunConfig& cfg, const nlohmann::json& entry);

}  // namespace attractor
