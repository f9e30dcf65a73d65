#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qtrack::cli {

/// Names of the built-in experiment presets, in display order.
std::vector<std::string> preset_names();

/// The preset document; throws qtrack::Error for an unknown name.
nlohmann::json preset_document(const std::string& name);

}  // namespace qtrack::cli
