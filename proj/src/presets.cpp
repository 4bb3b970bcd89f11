#include <string>

#include "isingbath/errors.hpp"
#include "isingbath/sweep.hpp"
#include "presets_data.hpp"

namespace isingbath {

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : detail::kPresetTable)
    if (!name.empty()) names.emplace_back(name);
  return names;
}

std::string_view preset_text(std::string_view name) {
  for (const auto& [preset_name, text] : detail::kPresetTable)
    if (!preset_name.empty() && preset_name == name) return text;
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + std::string(name) + "' (available: " + known + ")");
}

SweepSpec preset(std::string_view name) {
  try {
    return parse_config(preset_text(name));
  } catch (const ConfigError& e) {
    throw ConfigError("preset " + std::string(name) + ": " + e.what());
  }
}

}  // namespace isingbath
