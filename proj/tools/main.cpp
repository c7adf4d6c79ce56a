// cavneg: entanglement dynamics of three cavities in structured baths.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cavneg/config.hpp"
#include "cavneg/errors.hpp"
#include "cavneg/presets.hpp"
#include "cavneg/runner.hpp"

using namespace cavneg;

namespace {

struct Flags {
  std::string config;
  std::string preset;
  std::string state;
  std::optional<double> threshold;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

RunOptions options_from(const Flags& f) {
  RunOptions o;
  o.jobs = f.jobs;
  o.threshold = f.threshold;
  o.seed = f.seed;
  if (!f.state.empty()) {
    try {
      o.state = parse_initial_kind(f.state);
    } catch (const ParameterError& e) {
      throw ConfigError("--state", e.what());
    }
  }
  return o;
}

// --config or --preset; a preset yields one scenario per curve.
std::vector<ScenarioConfig> scenarios(const Flags& f) {
  if (!f.config.empty() && !f.preset.empty()) throw ConfigError("--config", "give either --config or --preset");
  if (!f.config.empty()) return {load_config(f.config)};
  if (!f.preset.empty()) {
    std::optional<InitialKind> state;
    if (!f.state.empty()) state = options_from(f).state;
    return figure_preset(f.preset, state).curves;
  }
  throw ConfigError("--config", "one of --config or --preset is required");
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--state", f.state, "Initial state override: W or GHZ")->check(CLI::IsMember({"W", "GHZ"}));
  cmd->add_option("--threshold", f.threshold, "Negativity threshold for the death time (default 0.01)");
  cmd->add_option("--seed", f.seed, "Seed for the jump ensemble (default 1)");
  cmd->add_option("--jobs", f.jobs, "Worker threads for trajectories and preset curves")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tripartite cavity entanglement under Markovian and non-Markovian baths.\n"
               "Outputs go to $CAVNEG_OUT_DIR (default: current directory).\n"
               "Exit codes: 0 ok, 1 internal error, 2 configuration, 3 numerical, 4 I/O.\n\n" +
               config_reference()};
  app.require_subcommand(1);
  Flags f;

  auto* simulate = app.add_subcommand("simulate", "Integrate one scenario and write t, negativity, kappa, populations");
  simulate->add_option("--config", f.config, "Scenario JSON file")->required();
  add_common(simulate, f);

  auto* rates = app.add_subcommand("rates", "Tabulate kappa(t), alpha(t), beta(t)");
  rates->add_option("--config", f.config, "Scenario JSON file");
  rates->add_option("--preset", f.preset, "Tabulate every curve of a preset");

  auto* figure = app.add_subcommand("figure", "Run every curve of a figure preset and plot them");
  figure->add_option("--preset", f.preset, "fig2a fig2b fig2c fig3 ... fig8")->required();
  add_common(figure, f);

  auto* compare = app.add_subcommand("compare-nmqj", "Compare the jump ensemble with the master equation");
  compare->add_option("--config", f.config, "Scenario JSON file");
  compare->add_option("--preset", f.preset, "Compare every curve of a zero-temperature preset");
  add_common(compare, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  return guarded(
      [&]() -> int {
        const RunOptions options = options_from(f);
        if (figure->parsed()) return run_figure(f.preset, options, std::cout);
        int code = kExitOk;
        for (const auto& c : scenarios(f)) {
          if (simulate->parsed()) code = run_simulate(c, options, std::cout);
          else if (rates->parsed()) code = run_rates(c, std::cout);
          else code = run_compare(c, options, std::cout);
          if (code != kExitOk) break;
        }
        return code;
      },
      std::cerr);
}
