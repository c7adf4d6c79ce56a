#include "cavneg/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cavneg/detail/overloaded.hpp"
#include "cavneg/errors.hpp"

namespace cavneg {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "$" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown key '" + key + "'");
  }
}

double get_number(const json& j, const std::string& path, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(join(path, key), "must be finite");
  return x;
}

double require_number(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(join(path, key), "missing required key");
  return get_number(j, path, key, 0.0);
}

long get_integer(const json& j, const std::string& path, const std::string& key, long fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  return v.get<long>();
}

std::string get_string(const json& j, const std::string& path, const std::string& key,
                       const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  return v.get<std::string>();
}

SpectralModel parse_model(const json& b, const std::string& path, double omega_bc) {
  const std::string model = get_string(b, path, "model", "");
  if (model.empty()) throw ConfigError(join(path, "model"), "missing required key");
  const std::set<std::string> common{"model", "delta", "nbar", "omega_c"};
  auto allow = [&common](std::initializer_list<const char*> extra) {
    std::set<std::string> s = common;
    for (const char* k : extra) s.insert(k);
    return s;
  };
  if (model == "flat") {
    reject_unknown(b, path, allow({"kappa"}));
    return Flat{get_number(b, path, "kappa", 1.0)};
  }
  if (model == "single_lorentzian") {
    reject_unknown(b, path, allow({"alpha_L", "Gamma"}));
    return SingleLorentzian{require_number(b, path, "alpha_L"), require_number(b, path, "Gamma"), omega_bc};
  }
  if (model == "double_lorentzian") {
    reject_unknown(b, path, allow({"alpha_L1", "alpha_L2", "Gamma1", "Gamma2", "W_D1", "W_D2"}));
    return DoubleLorentzian{require_number(b, path, "alpha_L1"), require_number(b, path, "alpha_L2"),
                            require_number(b, path, "Gamma1"),   require_number(b, path, "Gamma2"),
                            omega_bc,
                            get_number(b, path, "W_D1", 0.5),    get_number(b, path, "W_D2", 0.5)};
  }
  if (model == "bandgap_lorentzian") {
    reject_unknown(b, path, allow({"alpha_L1", "alpha_L2", "Gamma1", "Gamma2", "W_B1", "W_B2"}));
    return BandGapLorentzian{require_number(b, path, "alpha_L1"), require_number(b, path, "alpha_L2"),
                             require_number(b, path, "Gamma1"),   require_number(b, path, "Gamma2"),
                             omega_bc,
                             get_number(b, path, "W_B1", 2.0),    get_number(b, path, "W_B2", 1.0)};
  }
  if (model == "ohmic") {
    reject_unknown(b, path, allow({"s", "alpha", "omega_cut"}));
    return OhmicFamily{require_number(b, path, "s"), require_number(b, path, "alpha"),
                       require_number(b, path, "omega_cut")};
  }
  throw ConfigError(join(path, "model"), "unknown model '" + model +
                                             "' (flat, single_lorentzian, double_lorentzian, "
                                             "bandgap_lorentzian, ohmic)");
}

BathContext parse_bath(const json& b) {
  const std::string path = "bath";
  require_object(b, path);
  BathContext ctx;
  ctx.delta = get_number(b, path, "delta", 0.0);
  ctx.nbar = get_number(b, path, "nbar", 0.0);
  ctx.omega_c = get_number(b, path, "omega_c", 1.0);
  ctx.model = parse_model(b, path, ctx.omega_c - ctx.delta);
  return ctx;
}

}  // namespace

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Eme: return "eme";
    case SolverKind::Nmqj: return "nmqj";
    case SolverKind::Lindblad: return "lindblad";
  }
  return "eme";
}

std::string to_string(RateSource source) {
  return source == RateSource::Analytic ? "analytic" : "quadrature";
}

ScenarioConfig parse_config(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"name", "initial_state", "bath", "rates", "solver", "hopping", "grid", "outputs"});
  ScenarioConfig c;
  c.name = get_string(doc, "", "name", c.name);
  if (c.name.empty()) throw ConfigError("name", "must not be empty");

  if (!doc.contains("initial_state")) throw ConfigError("initial_state", "missing required key");
  try {
    c.initial = parse_initial_kind(get_string(doc, "", "initial_state", ""));
  } catch (const ParameterError& e) {
    throw ConfigError("initial_state", e.what());
  }

  if (!doc.contains("bath")) throw ConfigError("bath", "missing required key");
  c.bath = parse_bath(doc.at("bath"));

  const std::string rates = get_string(doc, "", "rates", "analytic");
  if (rates == "analytic") c.rates = RateSource::Analytic;
  else if (rates == "quadrature") c.rates = RateSource::Quadrature;
  else throw ConfigError("rates", "expected 'analytic' or 'quadrature'");

  if (doc.contains("solver")) {
    const json& s = doc.at("solver");
    require_object(s, "solver");
    reject_unknown(s, "solver", {"kind", "n_traj", "seed"});
    const std::string kind = get_string(s, "solver", "kind", "eme");
    if (kind == "eme") c.solver.kind = SolverKind::Eme;
    else if (kind == "nmqj") c.solver.kind = SolverKind::Nmqj;
    else if (kind == "lindblad") c.solver.kind = SolverKind::Lindblad;
    else throw ConfigError("solver.kind", "expected 'eme', 'nmqj' or 'lindblad'");
    c.solver.n_traj = get_integer(s, "solver", "n_traj", c.solver.n_traj);
    const long seed = get_integer(s, "solver", "seed", static_cast<long>(c.solver.seed));
    if (seed < 0) throw ConfigError("solver.seed", "must be >= 0");
    c.solver.seed = static_cast<std::uint64_t>(seed);
    if (c.solver.n_traj < 1) throw ConfigError("solver.n_traj", "must be >= 1");
  }

  if (doc.contains("hopping")) {
    const json& h = doc.at("hopping");
    require_object(h, "hopping");
    reject_unknown(h, "hopping", {"xi12", "xi23"});
    c.xi12 = get_number(h, "hopping", "xi12", 0.0);
    c.xi23 = get_number(h, "hopping", "xi23", 0.0);
  }

  if (!doc.contains("grid")) throw ConfigError("grid", "missing required key");
  {
    const json& g = doc.at("grid");
    require_object(g, "grid");
    reject_unknown(g, "grid", {"t_end", "dt", "sample_every"});
    c.grid.t_end = require_number(g, "grid", "t_end");
    c.grid.dt = get_number(g, "grid", "dt", c.grid.dt);
    c.grid.sample_every = static_cast<int>(get_integer(g, "grid", "sample_every", c.grid.sample_every));
    if (!(c.grid.dt > 0.0)) throw ConfigError("grid.dt", "must be > 0");
    if (!(c.grid.t_end >= c.grid.dt)) throw ConfigError("grid.t_end", "must be >= dt");
    if (c.grid.sample_every < 1) throw ConfigError("grid.sample_every", "must be >= 1");
  }

  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    require_object(o, "outputs");
    reject_unknown(o, "outputs", {"csv_path", "svg_path", "threshold"});
    c.outputs.csv_path = get_string(o, "outputs", "csv_path", "");
    c.outputs.svg_path = get_string(o, "outputs", "svg_path", "");
    c.outputs.threshold = get_number(o, "outputs", "threshold", c.outputs.threshold);
    if (!(c.outputs.threshold >= 0.0)) throw ConfigError("outputs.threshold", "must be >= 0");
  }

  validate(c);
  return c;
}

void validate(const ScenarioConfig& c) {
  for (const auto& v : cavneg::validate(c.bath.model))
    throw ConfigError("bath." + v.field, "violates " + v.constraint);
  if (c.bath.nbar < 0.0) throw ConfigError("bath.nbar", "must be >= 0");
  if (!(c.bath.omega_c > 0.0)) throw ConfigError("bath.omega_c", "must be > 0");
  if (std::holds_alternative<OhmicFamily>(c.bath.model)) {
    if (c.bath.delta != 0.0) throw ConfigError("bath.delta", "ohmic baths take no detuning");
    if (c.bath.nbar > 0.0 && c.rates == RateSource::Analytic)
      throw ConfigError("bath.nbar", "ohmic baths at finite temperature need rates = 'quadrature'");
  }
  if (c.solver.kind == SolverKind::Nmqj) {
    if (c.bath.nbar != 0.0) throw ConfigError("bath.nbar", "the nmqj solver requires nbar = 0");
    if (c.xi12 != 0.0 || c.xi23 != 0.0) throw ConfigError("hopping", "the nmqj solver does not support hopping");
  }
  if (c.solver.kind == SolverKind::Lindblad && !std::holds_alternative<Flat>(c.bath.model))
    throw ConfigError("solver.kind", "the lindblad solver requires a flat bath");
}

nlohmann::json to_json(const ScenarioConfig& c) {
  json bath = std::visit(
      detail::overloaded{
          [](const Flat& m) { return json{{"model", "flat"}, {"kappa", m.kappa}}; },
          [](const SingleLorentzian& m) {
            return json{{"model", "single_lorentzian"}, {"alpha_L", m.alpha_L}, {"Gamma", m.Gamma}};
          },
          [](const DoubleLorentzian& m) {
            return json{{"model", "double_lorentzian"}, {"alpha_L1", m.alpha_L1}, {"alpha_L2", m.alpha_L2},
                        {"Gamma1", m.Gamma1}, {"Gamma2", m.Gamma2}, {"W_D1", m.W_D1}, {"W_D2", m.W_D2}};
          },
          [](const BandGapLorentzian& m) {
            return json{{"model", "bandgap_lorentzian"}, {"alpha_L1", m.alpha_L1}, {"alpha_L2", m.alpha_L2},
                        {"Gamma1", m.Gamma1}, {"Gamma2", m.Gamma2}, {"W_B1", m.W_B1}, {"W_B2", m.W_B2}};
          },
          [](const OhmicFamily& m) {
            return json{{"model", "ohmic"}, {"s", m.s}, {"alpha", m.alpha}, {"omega_cut", m.omega_cut}};
          },
      },
      c.bath.model);
  bath["delta"] = c.bath.delta;
  bath["nbar"] = c.bath.nbar;
  bath["omega_c"] = c.bath.omega_c;

  json solver{{"kind", to_string(c.solver.kind)}};
  if (c.solver.kind == SolverKind::Nmqj) {
    solver["n_traj"] = c.solver.n_traj;
    solver["seed"] = c.solver.seed;
  }
  json outputs{{"threshold", c.outputs.threshold}};
  if (!c.outputs.csv_path.empty()) outputs["csv_path"] = c.outputs.csv_path;
  if (!c.outputs.svg_path.empty()) outputs["svg_path"] = c.outputs.svg_path;

  return json{{"name", c.name},
              {"initial_state", to_string(c.initial)},
              {"bath", bath},
              {"rates", to_string(c.rates)},
              {"solver", solver},
              {"hopping", {{"xi12", c.xi12}, {"xi23", c.xi23}}},
              {"grid", {{"t_end", c.grid.t_end}, {"dt", c.grid.dt}, {"sample_every", c.grid.sample_every}}},
              {"outputs", outputs}};
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON in '") + path + "': " + e.what());
  }
  return parse_config(doc);
}

std::string config_reference() {
  return R"(Scenario file (JSON), keys and defaults:
  name            string                          "scenario"
  initial_state   "W" | "GHZ"                     required
  bath.model      flat | single_lorentzian | double_lorentzian | bandgap_lorentzian | ohmic
    flat                kappa = 1
    single_lorentzian   alpha_L, Gamma
    double_lorentzian   alpha_L1, alpha_L2, Gamma1, Gamma2, W_D1 = 0.5, W_D2 = 0.5
    bandgap_lorentzian  alpha_L1, alpha_L2, Gamma1, Gamma2, W_B1 = 2, W_B2 = 1
    ohmic               s, alpha, omega_cut
  bath.delta      detuning omega_c - omega_bc     0
  bath.nbar       thermal photon number           0
  bath.omega_c    cavity frequency                1
  rates           "analytic" | "quadrature"       "analytic"
  solver.kind     "eme" | "nmqj" | "lindblad"     "eme"
  solver.n_traj   trajectories (nmqj)             10000
  solver.seed     RNG seed (nmqj)                 1
  hopping.xi12    hopping 1-2                     0
  hopping.xi23    hopping 2-3                     0
  grid.t_end      final time                      required
  grid.dt         RK4 step                        0.001
  grid.sample_every  output stride in steps       10
  outputs.csv_path   CSV file                     <name>.csv
  outputs.svg_path   SVG plot                     none
  outputs.threshold  death-time threshold         0.01
Relative output paths are resolved against $CAVNEG_OUT_DIR (default: current directory).
)";
}

}  // namespace cavneg
