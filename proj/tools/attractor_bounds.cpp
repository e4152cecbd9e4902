// attractor-bounds: eigenvalue-sum verification, attractor dimension bounds
// and CGL simulation diagnostics driven by a single JSON config.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "attractor/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet CGL attractor dimension bounds"};
  app.require_subcommand(1, 1);

  std::string config_path;
  attractor::Overrides overrides;
  double gamma = 0, c = 0, dt = 0, t_end = 0;
  std::size_t m_max = 0;
  std::uint64_t seed = 0;
  std::string out;

  for (const char* name : {"spectrum", "bounds", "simulate", "report"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--gamma", gamma, "override params.gamma");
    sub->add_option("--c", c, "override consts.c");
    sub->add_option("--m-max", m_max, "override spectrum.m_max");
    sub->add_option("--dt", dt, "override sim.dt");
    sub->add_option("--t-end", t_end, "override sim.t_end");
    sub->add_option("--seed", seed, "override sim.initial_condition.seed");
    sub->add_option("--out", out, "override output_dir");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : attractor::kExitConfigError;
  }

  auto* sub = app.get_subcommands().front();
  if (sub->count("--gamma")) overrides.gamma = gamma;
  if (sub->count("--c")) overrides.c = c;
  if (sub->count("--m-max")) overrides.m_max = m_max;
  if (sub->count("--dt")) overrides.dt = dt;
  if (sub->count("--t-end")) overrides.t_end = t_end;
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--out")) overrides.out = out;

  nlohmann::json doc;
  try {
    std::ifstream in(config_path);
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return attractor::kExitConfigError;
  }
  return attractor::run_command(sub->get_name(), std::move(doc), overrides, std::cerr);
}
