#include "cavneg/presets.hpp"

#include <sstream>

#include "cavneg/errors.hpp"

namespace cavneg {

namespace {

ScenarioConfig curve(const std::string& name, SpectralModel model, double delta, double nbar, double t_end) {
  ScenarioConfig c;
  c.name = name;
  c.bath.model = std::move(model);
  c.bath.delta = delta;
  c.bath.nbar = nbar;
  c.grid.t_end = t_end;
  return c;
}

// Lorentzian triple shared by figs 3-6 and 8; omega_bc follows the detuning.
std::vector<ScenarioConfig> lorentzian_curves(const std::string& prefix, double alpha, double delta,
                                              double nbar, double t_end) {
  const double wbc = 1.0 - delta;
  return {
      curve(prefix + "-single", SingleLorentzian{alpha, 0.1, wbc}, delta, nbar, t_end),
      curve(prefix + "-double", DoubleLorentzian{alpha, alpha, 0.1, 0.01, wbc, 0.5, 0.5}, delta, nbar, t_end),
      curve(prefix + "-bandgap", BandGapLorentzian{alpha, alpha, 0.1, 0.01, wbc, 2.0, 1.0}, delta, nbar, t_end),
  };
}

std::string nbar_label(double nbar) {
  std::ostringstream s;
  s << nbar;
  return s.str();
}

}  // namespace

std::vector<std::string> preset_ids() {
  return {"fig2a", "fig2b", "fig2c", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

FigurePreset figure_preset(const std::string& id, std::optional<InitialKind> state) {
  FigurePreset p;
  p.id = id;
  if (id == "fig2a" || id == "fig2b") {
    p.fixed_state = id == "fig2a" ? InitialKind::W : InitialKind::GHZ;
    for (double nbar : {0.0, 0.1, 0.5})
      p.curves.push_back(curve(id + "-nbar" + nbar_label(nbar), Flat{1.0}, 0.0, nbar, 5.0));
  } else if (id == "fig2c") {
    p.fixed_state = InitialKind::W;
    auto c = curve("fig2c-hopping", Flat{1.0}, 0.0, 0.0, 5.0);
    c.xi12 = c.xi23 = 5.0;
    p.curves.push_back(c);
  } else if (id == "fig3" || id == "fig8") {
    const double nbar = id == "fig8" ? 0.1 : 0.0;
    p.curves.push_back(curve(id + "-markovian", Flat{1.0}, 0.0, nbar, 12.0));
    for (auto& c : lorentzian_curves(id, 2.0, 0.0, nbar, 12.0)) p.curves.push_back(c);
  } else if (id == "fig4") {
    p.curves = lorentzian_curves(id, 6.0, 1.0, 0.0, 20.0);
  } else if (id == "fig5") {
    p.curves = lorentzian_curves(id, 2.0, 1.0, 0.0, 20.0);
  } else if (id == "fig6") {
    p.curves = lorentzian_curves(id, 6.0, 5.0, 0.0, 20.0);
  } else if (id == "fig7") {
    p.curves.push_back(curve("fig7-subohmic", OhmicFamily{0.5, 0.1, 2.0}, 0.0, 0.0, 10.0));
    p.curves.push_back(curve("fig7-ohmic", OhmicFamily{1.0, 0.6, 10.0}, 0.0, 0.0, 10.0));
    p.curves.push_back(curve("fig7-superohmic", OhmicFamily{3.0, 1.0, 15.0}, 0.0, 0.0, 10.0));
  } else {
    std::ostringstream msg;
    msg << "unknown preset '" << id << "' (known:";
    for (const auto& k : preset_ids()) msg << ' ' << k;
    msg << ')';
    throw ConfigError("preset", msg.str());
  }

  InitialKind kind = p.fixed_state.value_or(InitialKind::W);
  if (state) {
    if (p.fixed_state && *state != *p.fixed_state)
      throw ConfigError("state", "preset " + id + " is defined for the " + to_string(*p.fixed_state) + " state");
    kind = *state;
  }
  for (auto& c : p.curves) {
    c.initial = kind;
    validate(c);
  }
  return p;
}

nlohmann::json preset_manifest() {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& id : preset_ids()) {
    const FigurePreset p = figure_preset(id);
    nlohmann::json curves = nlohmann::json::array();
    for (const auto& c : p.curves) curves.push_back(to_json(c));
    out[id] = {{"fixed_state", p.fixed_state ? nlohmann::json(to_string(*p.fixed_state)) : nlohmann::json()},
               {"curves", curves}};
  }
  return out;
}

}  // namespace cavneg
