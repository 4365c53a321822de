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

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gqc/operators.hpp"

namespace gqc {

/// exp(-i t H^(d)).
struct TwoQubitGate {
    GlobalHamiltonian hamiltonian;
    double duration = 0.0;
};

/// u on every site of D.
struct OneQubitGate {
    Matrix2 unitary;
};

using GateInstruction = std::variant<TwoQubitGate, OneQubitGate>;

GateInstruction inverse(const GateInstruction& g);

class GlobalGateSequence;

/// `body` applied `count` times in a row.
struct RepeatBlock {
    std::uint64_t count = 0;
    std::shared_ptr<const GlobalGateSequence> body;
};

using SequenceItem = std::variant<GateInstruction, RepeatBlock>;

/// What the compiler knows about one compiled logical gate.
struct GateCompilationInfo {
    std::string target;
    std::uint64_t n1 = 0;
    std::uint64_t n2 = 0;
    double epsilon = 0.0;
    double predicted_bound = 0.0;
    std::optional<double> measured_error;
    std::optional<double> leakage;
    std::optional<bool> met;
};

struct SequenceMetadata {
    std::string mode;
    std::optional<double> epsilon_total;
    std::optional<double> predicted_bound;
    std::vector<GateCompilationInfo> gates;
};

/// Instructions in application order: items()[0] acts first.
class GlobalGateSequence {
   public:
    void append(GateInstruction g);
    void append_repeat(std::uint64_t count, std::shared_ptr<const GlobalGateSequence> body);
    void append_repeat(std::uint64_t count, GlobalGateSequence body);
    /// Appends the items of `other` (metadata is not merged).
    void append_sequence(const GlobalGateSequence& other);

    const std::vector<SequenceItem>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

    /// Number of instructions after expanding repeats, saturating at
    /// UINT64_MAX.
    std::uint64_t instruction_count() const;
    /// Visits every instruction in application order, expanding repeats.
    void for_each_instruction(const std::function<void(const GateInstruction&)>& f) const;
    /// The adjoint product: items reversed, durations negated, u -> u^dag.
    GlobalGateSequence inverse() const;
    /// A copy with every repeat expanded. Throws ResourceLimitError above
    /// `cap` instructions.
    GlobalGateSequence flattened(std::uint64_t cap = 10'000'000) const;

    SequenceMetadata metadata;

   private:
    std::vector<SequenceItem> items_;
};

}  // namespace gqc
