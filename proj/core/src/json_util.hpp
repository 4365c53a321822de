// Copyright 2026 The gqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gqc/common.hpp"
#include <map>

#include "gqc/lattice.hpp"
#include "json.hpp"

namespace gqc::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Parses JSON, converting parse errors into FormatError with a line number.
json parse_json(std::string_view text);

/// Lines of every object that opens directly inside an array stored under one
/// of `record_keys` (or inside a top-level array), in document pre-order.
std::vector<std::size_t> record_lines(std::string_view text, std::initializer_list<std::string_view> record_keys);

/// 1-based line of each key of the top-level object.
std::map<std::string, std::size_t> top_level_key_lines(std::string_view text);

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                           std::size_t line = 0);

GroupElement parse_element(const json& j, const GroupSpec& g, std::size_t line = 0);
json element_to_json(const GroupElement& a, const GroupSpec& g);

}  // namespace gqc::detail
