#include "magnomech/config_io.hpp"

#include <fstream>
#include <sstream>

#include "magnomech/errors.hpp"

namespace magnomech {

using nlohmann::json;

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError("missing key '" + where + key + "'");
  }
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_number()) throw ConfigError("'" + where + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number(obj, key, where);
}

double hz(const json& obj, const char* key, const std::string& where) {
  return to_angular(number(obj, key, where));
}

std::optional<double> optional_hz(const json& obj, const char* key, const std::string& where) {
  auto v = optional_number(obj, key, where);
  if (v) *v = to_angular(*v);
  return v;
}

SphereParams sphere_from_json(const json& s, const std::string& where) {
  SphereParams p;
  p.omega_n = hz(s, "omega_n", where);
  p.kappa_n = hz(s, "kappa_n", where);
  p.r = hz(s, "r", where);
  p.omega_d = hz(s, "omega_d", where);
  p.gamma_d = hz(s, "gamma_d", where);
  const bool bare = s.contains("R0");
  const bool effective = s.contains("R_eff");
  if (bare == effective) {
    throw ConfigError("'" + where + "' needs exactly one of R0 or R_eff");
  }
  if (bare) {
    p.coupling = BareCoupling{hz(s, "R0", where)};
  } else {
    p.coupling = EffectiveCoupling{hz(s, "R_eff", where)};
  }
  p.diameter = optional_number(s, "diameter", where);
  return p;
}

}  // namespace

SystemConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  SystemConfig c;

  if (j.contains("constants")) {
    const json& k = j.at("constants");
    c.constants.gamma_r = optional_hz(k, "gamma_r", "constants.").value_or(c.constants.gamma_r);
    c.constants.nu = optional_number(k, "nu", "constants.").value_or(c.constants.nu);
    c.constants.s = optional_number(k, "s", "constants.").value_or(c.constants.s);
    c.constants.hbar = optional_number(k, "hbar", "constants.").value_or(c.constants.hbar);
  }

  const json& cavity = member(j, "cavity", "");
  c.omega_c = hz(cavity, "omega_c", "cavity.");
  c.kappa_c = hz(cavity, "kappa_c", "cavity.");

  const json& spheres = member(j, "spheres", "");
  if (!spheres.is_array() || spheres.size() != 2) {
    throw ConfigError("'spheres' must be an array of exactly 2 spheres");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    c.spheres[i] = sphere_from_json(spheres[i], "spheres." + std::to_string(i) + ".");
  }

  const json& drive = member(j, "drive", "");
  c.drive.B = optional_number(drive, "B", "drive.").value_or(0.0);
  c.drive.omega_0 = hz(drive, "omega_0", "drive.");
  if (drive.contains("target_sphere")) {
    const json& t = drive.at("target_sphere");
    if (!t.is_number_integer()) throw ConfigError("'drive.target_sphere' must be 1 or 2");
    c.drive.target_sphere = t.get<int>();
  }
  c.drive.eps_p = optional_number(drive, "eps_p", "drive.").value_or(1.0);

  if (j.contains("opa")) {
    const json& opa = j.at("opa");
    c.opa.lambda = optional_hz(opa, "lambda", "opa.").value_or(0.0);
    c.opa.theta = optional_number(opa, "theta", "opa.").value_or(0.0);
  }

  if (j.contains("detuning_overrides") && !j.at("detuning_overrides").is_null()) {
    const json& o = j.at("detuning_overrides");
    c.detuning_overrides.cavity = optional_hz(o, "Delta_c", "detuning_overrides.");
    c.detuning_overrides.magnon1 = optional_hz(o, "Delta_n1", "detuning_overrides.");
    c.detuning_overrides.magnon2 = optional_hz(o, "Delta_n2", "detuning_overrides.");
  }

  // Probe power sets eps_p after kappa_c and omega_0 are known.
  if (auto power = optional_number(drive, "P_p", "drive.")) {
    try {
      c.drive.eps_p = probe_amplitude(*power, c.drive.omega_0, c.kappa_c, c.constants.hbar);
    } catch (const InvalidParameter& e) {
      throw ConfigError(std::string("drive.P_p: ") + e.what());
    }
  }

  try {
    check_config(c);
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  return c;
}

nlohmann::ordered_json config_to_json(const SystemConfig& c) {
  nlohmann::ordered_json j;
  j["cavity"] = {{"omega_c", to_ordinary(c.omega_c)}, {"kappa_c", to_ordinary(c.kappa_c)}};
  j["spheres"] = nlohmann::ordered_json::array();
  for (const auto& s : c.spheres) {
    nlohmann::ordered_json js;
    js["omega_n"] = to_ordinary(s.omega_n);
    js["kappa_n"] = to_ordinary(s.kappa_n);
    js["r"] = to_ordinary(s.r);
    js["omega_d"] = to_ordinary(s.omega_d);
    js["gamma_d"] = to_ordinary(s.gamma_d);
    if (const auto* bare = std::get_if<BareCoupling>(&s.coupling)) {
      js["R0"] = to_ordinary(bare->rate);
    } else {
      js["R_eff"] = to_ordinary(std::get<EffectiveCoupling>(s.coupling).rate);
    }
    if (s.diameter) js["diameter"] = *s.diameter;
    j["spheres"].push_back(js);
  }
  j["drive"] = {{"B", c.drive.B},
                {"omega_0", to_ordinary(c.drive.omega_0)},
                {"target_sphere", c.drive.target_sphere},
                {"eps_p", c.drive.eps_p}};
  j["opa"] = {{"lambda", to_ordinary(c.opa.lambda)}, {"theta", c.opa.theta}};
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  if (c.detuning_overrides.cavity) o["Delta_c"] = to_ordinary(*c.detuning_overrides.cavity);
  if (c.detuning_overrides.magnon1) o["Delta_n1"] = to_ordinary(*c.detuning_overrides.magnon1);
  if (c.detuning_overrides.magnon2) o["Delta_n2"] = to_ordinary(*c.detuning_overrides.magnon2);
  j["detuning_overrides"] = o;
  j["constants"] = {{"gamma_r", to_ordinary(c.constants.gamma_r)},
                    {"nu", c.constants.nu},
                    {"s", c.constants.s},
                    {"hbar", c.constants.hbar}};
  return j;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse '" + path.string() + "': " + e.what());
  }
  return config_from_json(j);
}

namespace {

void collect_paths(const json& j, const std::string& prefix, std::vector<std::string>& out) {
  if (j.is_number()) {
    out.push_back(prefix);
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      collect_paths(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      collect_paths(j[i], prefix.empty() ? std::to_string(i) : prefix + "." + std::to_string(i), out);
    }
  }
}

json* resolve(json& j, const std::string& path) {
  json* node = &j;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (node->is_object() && node->contains(part)) {
      node = &(*node)[part];
    } else if (node->is_array() && !part.empty() &&
               part.find_first_not_of("0123456789") == std::string::npos &&
               std::stoul(part) < node->size()) {
      node = &(*node)[std::stoul(part)];
    } else {
      return nullptr;
    }
  }
  return node->is_number() ? node : nullptr;
}

[[noreturn]] void unknown_path(const json& j, const std::string& path) {
  std::string msg = "unknown numeric config path '" + path + "'; valid paths:";
  for (const auto& p : numeric_paths(j)) msg += "\n  " + p;
  throw ConfigError(msg);
}

}  // namespace

std::vector<std::string> numeric_paths(const json& j) {
  std::vector<std::string> out;
  collect_paths(j, "", out);
  return out;
}

void set_numeric_path(json& j, const std::string& path, double value) {
  json* node = resolve(j, path);
  if (!node) unknown_path(j, path);
  *node = value;
}

double get_numeric_path(const json& j, const std::string& path) {
  json copy = j;
  json* node = resolve(copy, path);
  if (!node) unknown_path(j, path);
  return node->get<double>();
}

}  // namespace magnomech
