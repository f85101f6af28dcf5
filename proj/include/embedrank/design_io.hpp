#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "embedrank/design.hpp"

namespace embedrank {

// .des text: "v b" on the first line, then one line per block with its
// 0-based point indices separated by single spaces. LF endings, no comments.
std::string to_des(const IncidenceStructure& d);
IncidenceStructure from_des(std::string_view text);

// {"v":..,"blocks":[[..],..],"name":..}
std::string to_json(const IncidenceStructure& d);
IncidenceStructure from_json(std::string_view text);

/// Format chosen by extension: ".json" is JSON, anything else .des.
IncidenceStructure read_design(const std::filesystem::path& path);
void write_design(const std::filesystem::path& path, const IncidenceStructure& d);

}  // namespace embedrank
