#pragma once

// Scenario execution shared by the command-line tool and the acceptance suite.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "cavneg/config.hpp"
#include "cavneg/dynamics.hpp"
#include "cavneg/nmqj.hpp"
#include "cavneg/output.hpp"

namespace cavneg {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // unexpected internal error
  kExitConfig = 2,   // bad arguments, configuration or parameters
  kExitNumeric = 3,  // integration, quadrature or eigensolver failure
  kExitIo = 4,       // unreadable input or unwritable output
};

struct RunOptions {
  int jobs = 1;
  std::optional<double> threshold;
  std::optional<std::uint64_t> seed;
  std::optional<InitialKind> state;
};

/// Config with the command-line overrides applied.
ScenarioConfig apply_overrides(ScenarioConfig config, const RunOptions& options);

/// Analytic rates, or quadrature rates tabulated on a 0.01 grid.
RateCoefficients build_rates(const ScenarioConfig& config);
EvolutionConfig build_evolution(const ScenarioConfig& config, const RateCoefficients& rates);

struct ScenarioResult {
  ScenarioConfig config;
  NegativitySeries series;
  double average_kappa = 0.0;  // over [0, t_end]
};

/// Runs the configured solver; writes nothing.
ScenarioResult simulate(const ScenarioConfig& config, int jobs = 1);

/// t, negativity, kappa, rho11 ... rho88.
CsvTable dynamics_table(const NegativitySeries& series);
/// t, kappa, re_alpha, im_alpha, re_beta, im_beta at every output sample.
CsvTable rates_table(const ScenarioConfig& config, const RateCoefficients& rates);

struct ComparisonResult {
  CsvTable table;  // t, trace_distance_to_eme, negativity_nmqj, negativity_eme, n_negative_jumps, n_positive_jumps
  double max_trace_distance = 0.0;
  long sign_violations = 0;
  long step_warnings = 0;
  double max_ancestor_error = 0.0;
};

ComparisonResult compare_nmqj(const ScenarioConfig& config, int jobs = 1);

// Subcommand bodies: write files, report on `out`, return an exit code.
int run_simulate(const ScenarioConfig& config, const RunOptions& options, std::ostream& out);
int run_rates(const ScenarioConfig& config, std::ostream& out);
int run_figure(const std::string& preset, const RunOptions& options, std::ostream& out);
int run_compare(const ScenarioConfig& config, const RunOptions& options, std::ostream& out);

/// Calls `body`, mapping exceptions onto ExitCode and reporting them on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace cavneg
