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

#include "gqc/sequence.hpp"

#include <limits>
#include <stdexcept>

namespace gqc {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

}  // namespace

GateInstruction inverse(const GateInstruction& g) {
    if (const auto* two = std::get_if<TwoQubitGate>(&g)) {
        return TwoQubitGate{two->hamiltonian, -two->duration};
    }
    return OneQubitGate{std::get<OneQubitGate>(g).unitary.adjoint()};
}

void GlobalGateSequence::append(GateInstruction g) { items_.emplace_back(std::move(g)); }

void GlobalGateSequence::append_repeat(std::uint64_t count, std::shared_ptr<const GlobalGateSequence> body) {
    if (!body) throw std::invalid_argument("repeat block needs a body");
    if (count == 0 || body->empty()) return;
    items_.emplace_back(RepeatBlock{count, std::move(body)});
}

void GlobalGateSequence::append_repeat(std::uint64_t count, GlobalGateSequence body) {
    append_repeat(count, std::make_shared<const GlobalGateSequence>(std::move(body)));
}

void GlobalGateSequence::append_sequence(const GlobalGateSequence& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::uint64_t GlobalGateSequence::instruction_count() const {
    std::uint64_t total = 0;
    for (const auto& item : items_) {
        if (std::holds_alternative<GateInstruction>(item)) {
            total = saturating_add(total, 1);
        } else {
            const auto& rep = std::get<RepeatBlock>(item);
            total = saturating_add(total, saturating_mul(rep.count, rep.body->instruction_count()));
        }
    }
    return total;
}

void GlobalGateSequence::for_each_instruction(const std::function<void(const GateInstruction&)>& f) const {
    for (const auto& item : items_) {
        if (const auto* g = std::get_if<GateInstruction>(&item)) {
            f(*g);
        } else {
            const auto& rep = std::get<RepeatBlock>(item);
            for (std::uint64_t i = 0; i < rep.count; ++i) rep.body->for_each_instruction(f);
        }
    }
}

GlobalGateSequence GlobalGateSequence::inverse() const {
    GlobalGateSequence out;
    for (auto it = items_.rbegin(); it != items_.rend(); ++it) {
        if (const auto* g = std::get_if<GateInstruction>(&*it)) {
            out.append(gqc::inverse(*g));
        } else {
            const auto& rep = std::get<RepeatBlock>(*it);
            out.append_repeat(rep.count, rep.body->inverse());
        }
    }
    return out;
}

GlobalGateSequence GlobalGateSequence::flattened(std::uint64_t cap) const {
    if (instruction_count() > cap) {
        throw ResourceLimitError("flattening would produce " + std::to_string(instruction_count()) +
                                 " instructions, above the cap of " + std::to_string(cap));
    }
    GlobalGateSequence out;
    out.metadata = metadata;
    for_each_instruction([&](const GateInstruction& g) { out.append(g); });
    return out;
}

}  // namespace gqc
