#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "magnomech/params.hpp"

namespace magnomech {

struct PresetGrid {
  double min = 0.0;  // units of omega_d1
  double max = 2.0;
  std::size_t points = 2001;
};

struct Preset {
  std::string name;
  std::string caption;
  nlohmann::json overrides;  // dotted path -> value, file units
  nlohmann::json config;     // base with overrides applied, file units
  PresetGrid grid;

  SystemConfig system_config() const;
};

/// Names in file order.
std::vector<std::string> preset_names();
Preset find_preset(const std::string& name);

/// The base configuration every figure preset modifies (effective couplings).
nlohmann::json preset_base_json();
/// Microscopic-mode configuration of the same device (bare couplings, drive field).
nlohmann::json microscopic_base_json();

}  // namespace magnomech
