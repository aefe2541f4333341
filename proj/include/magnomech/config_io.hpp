#pragma once

// JSON configuration schema (all frequencies and rates in Hz, i.e. f = omega/2pi):
//
// {
//   "cavity": {"omega_c": 10e9, "kappa_c": 2.1e6},
//   "spheres": [
//     {"omega_n": 10e9, "kappa_n": 0.1e6, "r": 1.5e6, "omega_d": 10e6, "gamma_d": 100,
//      "R0": 0.2 | "R_eff": 2e6, "diameter": 250e-6},
//     {...}
//   ],
//   "drive": {"B": 3.6e-5, "omega_0": 10e9, "target_sphere": 1, "eps_p": 1, "P_p": 1e-12},
//   "opa": {"lambda": 0, "theta": 0},
//   "detuning_overrides": {"Delta_c": 10e6, "Delta_n1": 10e6, "Delta_n2": 10e6},
//   "constants": {"gamma_r": 28e9, "nu": 4.22e27, "s": 2.5, "hbar": 1.054571817e-34}
// }
//
// Fields are in tesla, lengths in metres, phases in radians. "constants",
// "detuning_overrides", "opa" and the optional drive fields may be omitted.
// "P_p" (W), when given, sets eps_p from the probe power at omega_0.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "magnomech/params.hpp"

namespace magnomech {

SystemConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const SystemConfig& config);

SystemConfig load_config(const std::filesystem::path& path);

/// Sets a numeric leaf addressed by a dotted path ("opa.lambda",
/// "spheres.0.R_eff"). Throws ConfigError listing valid paths if absent.
void set_numeric_path(nlohmann::json& j, const std::string& path, double value);
double get_numeric_path(const nlohmann::json& j, const std::string& path);

/// All dotted paths to numeric leaves, in document order.
std::vector<std::string> numeric_paths(const nlohmann::json& j);

}  // namespace magnomech
