#include "magnomech/presets.hpp"

#include "magnomech/config_io.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/presets_data.hpp"

namespace magnomech {

using nlohmann::json;

namespace {

const json& presets_document() {
  static const json doc = json::parse(detail::kPresetsJson);
  return doc;
}

}  // namespace

SystemConfig Preset::system_config() const { return config_from_json(config); }

json preset_base_json() { return presets_document().at("base"); }

json microscopic_base_json() { return presets_document().at("microscopic"); }

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : presets_document().at("presets")) names.push_back(p.at("name").get<std::string>());
  return names;
}

Preset find_preset(const std::string& name) {
  for (const auto& p : presets_document().at("presets")) {
    if (p.at("name") != name) continue;
    Preset out;
    out.name = name;
    out.caption = p.value("caption", "");
    out.overrides = p.at("set");
    out.config = preset_base_json();
    for (auto it = out.overrides.begin(); it != out.overrides.end(); ++it) {
      set_numeric_path(out.config, it.key(), it.value().get<double>());
    }
    if (p.contains("grid")) {
      const json& g = p.at("grid");
      out.grid = {g.at(0).get<double>(), g.at(1).get<double>(), g.at(2).get<std::size_t>()};
    }
    return out;
  }
  std::string msg = "unknown preset '" + name + "'; available:";
  for (const auto& n : preset_names()) msg += " " + n;
  throw ConfigError(msg);
}

}  // namespace magnomech
