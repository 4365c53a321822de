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
#include <string>
#include <string_view>

#include "gqc/lattice.hpp"

namespace gqc {

// Layout files are JSON objects with these fields (unknown fields are rejected):
//
//   "group": {"kind": "cyclic", "n": N} | {"kind": "grid", "l": L, "m": M}
//   "D":     optional list of sites; defaults to the full circle / box
//   "P":     list of sites, or {"family": NAME, "params": {...}} for a stock layout
//   "r", "r'": sites (optional with the family form; must agree when given)
//   "W":     "uniform" (default) or a list of [p, q, value] overrides on W = 1
//   "format", "version": informational
//
// Cyclic sites are integers, grid sites are arrays of l integers.

Layout parse_layout(std::string_view json_text);
Layout load_layout(const std::filesystem::path& path);

/// Canonical JSON for `layout` (explicit P, sparse W listing non-unit entries).
std::string layout_to_json(const Layout& layout);

}  // namespace gqc
