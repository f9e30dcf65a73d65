#include "presets.hpp"

#include <utility>

#include "qtrack/errors.hpp"

namespace qtrack::cli {
namespace {

// Generated from tools/presets/*.json at configure time; each entry is
// {name, raw JSON text}.
constexpr std::pair<const char*, const char*> kPresets[] = {
#include "preset_table.inc"
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : kPresets) names.emplace_back(name);
  return names;
}

nlohmann::json preset_document(const std::string& name) {
  for (const auto& [preset, text] : kPresets) {
    if (name == preset) return nlohmann::json::parse(text);
  }
  std::string known;
  for (const auto& [preset, text] : kPresets) {
    if (!known.empty()) known += ", ";
    known += preset;
  }
  throw Error("unknown preset '" + name + "' (available: " + known + ")");
}

}  // namespace qtrack::cli
