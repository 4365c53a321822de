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
#include <memory>
#include <string>
#include <string_view>

#include "gqc/compiler.hpp"

namespace gqc {

// Circuit files list logical gates in application order:
//
//   {"format": "gqc-circuit", "version": "...",
//    "gates": [{"kind": "real_rot" | "imag_rot", "delta": 0 | 1, "T": x, "p": P, "q": Q}, ...]}
//
// A bare top-level array of gate records is accepted too.

LogicalCircuit parse_circuit(std::string_view json_text, std::shared_ptr<const Layout> layout);
LogicalCircuit load_circuit(const std::filesystem::path& path, std::shared_ptr<const Layout> layout);
std::string circuit_to_json(const LogicalCircuit& circuit);

}  // namespace gqc
