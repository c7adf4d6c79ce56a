#pragma once

// Named figure presets: one scenario per plotted curve.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavneg/config.hpp"

namespace cavneg {

struct FigurePreset {
  std::string id;
  /// Set when the preset fixes the initial state (fig2a: W, fig2b: GHZ).
  std::optional<InitialKind> fixed_state;
  std::vector<ScenarioConfig> curves;
};

std::vector<std::string> preset_ids();

/// Expands `id` with the given initial state. Throws ConfigError for an
/// unknown id or a state that conflicts with a fixed one.
FigurePreset figure_preset(const std::string& id, std::optional<InitialKind> state = std::nullopt);

/// Every preset expanded with its default state, keyed by id.
nlohmann::json preset_manifest();

}  // namespace cavneg
