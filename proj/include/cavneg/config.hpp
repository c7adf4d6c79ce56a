#pragma once

// Scenario configuration: a strict JSON schema mapped onto the solver inputs.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cavneg/hilbert.hpp"
#include "cavneg/rates.hpp"

namespace cavneg {

enum class RateSource { Analytic, Quadrature };
enum class SolverKind { Eme, Nmqj, Lindblad };

struct SolverSettings {
  SolverKind kind = SolverKind::Eme;
  long n_traj = 10000;
  std::uint64_t seed = 1;
};

struct GridSettings {
  double t_end = 10.0;
  double dt = 1e-3;
  int sample_every = 10;
};

struct OutputSettings {
  std::string csv_path;  // empty: <name>.csv in the output directory
  std::string svg_path;  // empty: no plot
  double threshold = 1e-2;
};

struct ScenarioConfig {
  std::string name = "scenario";
  InitialKind initial = InitialKind::W;
  BathContext bath;
  RateSource rates = RateSource::Analytic;
  SolverSettings solver;
  double xi12 = 0.0;
  double xi23 = 0.0;
  GridSettings grid;
  OutputSettings outputs;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ConfigError carrying the JSON path of the offending key.
ScenarioConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a file. Throws IoError if it cannot be read and
/// ConfigError on malformed JSON or schema violations.
ScenarioConfig load_config(const std::string& path);

/// Cross-field checks (solver/bath compatibility, model constraints).
void validate(const ScenarioConfig& config);

/// Canonical JSON form; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ScenarioConfig& config);

/// Schema summary with defaults, for --help.
std::string config_reference();

std::string to_string(SolverKind kind);
std::string to_string(RateSource source);

}  // namespace cavneg
