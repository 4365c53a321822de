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
#include "gqc/sequence.hpp"

namespace gqc {

// Gate-sequence files are JSON objects:
//
//   {"format": "gqc-sequence", "version": "...", "metadata": {...},
//    "instructions": [record, ...]}
//
// with records
//
//   {"type": "two_qubit", "generator": "A" | "R0" | "R1" | "I0" | "I1", "d": D, "t": T}
//   {"type": "two_qubit", "matrix": [[re, im] x 16], "d": D, "t": T}
//   {"type": "one_qubit", "gate": "I" | "X" | "Y" | "Z" | "H" | "S"}
//   {"type": "one_qubit", "matrix": [[re, im] x 4]}
//   {"type": "repeat", "count": N, "body": [record, ...]}
//
// Matrices are row-major. D is a group element in the layout's notation.
// Instructions are listed in application order.

GlobalGateSequence parse_sequence(std::string_view json_text, const GroupSpec& group);
GlobalGateSequence load_sequence(const std::filesystem::path& path, const GroupSpec& group);

std::string sequence_to_json(const GlobalGateSequence& sequence, const GroupSpec& group);
void save_sequence(const std::filesystem::path& path, const GlobalGateSequence& sequence, const GroupSpec& group);

/// Named one-qubit gates accepted in sequence files.
Matrix2 named_one_qubit_gate(std::string_view name);

}  // namespace gqc
