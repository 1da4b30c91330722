// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

namespace relay::run {

// Parses the TOML subset used by experiment configs into a JSON tree:
// [table] and [[array-of-table]] headers with dotted paths, bare or quoted
// keys, basic and literal strings, integers, floats, booleans and
// (possibly multiline) arrays, with # comments. No dates, no inline tables,
// no multiline strings; see docs/configuration.md.
nlohmann::json parse_toml(std::string_view text);

nlohmann::json parse_toml_file(const std::filesystem::path& path);

}  // namespace relay::run
