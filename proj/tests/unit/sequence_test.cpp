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

#include <gtest/gtest.h>

#include <random>

#include "gqc/compiler.hpp"
#include "gqc/sequence_io.hpp"
#include "gqc/simulator.hpp"

using namespace gqc;

namespace {

std::shared_ptr<const Layout> slab7() { return std::make_shared<const Layout>(grid_slab(1, 7)); }

GlobalGateSequence sample(const GroupSpec&) {
    GlobalGateSequence body;
    body.append(TwoQubitGate{{TwoQubitHermitian::projector11(), {3}}, 0.25});
    body.append(TwoQubitGate{{TwoQubitHermitian::imag_family(1), {1}}, -0.125});
    GlobalGateSequence s;
    s.append(TwoQubitGate{{TwoQubitHermitian::real_family(1), {-1}}, 0.5});
    s.append_repeat(3, body);
    s.append(OneQubitGate{named_one_qubit_gate("S")});
    return s;
}

}  // namespace

TEST(Sequence, CountsAndFlattening) {
    auto l = slab7();
    auto s = sample(l->group());
    EXPECT_EQ(s.instruction_count(), 1u + 3u * 2u + 1u);
    EXPECT_EQ(s.flattened().items().size(), 8u);
    GlobalGateSequence big;
    big.append_repeat(std::numeric_limits<std::uint64_t>::max(), s);
    big.append_repeat(2, s);
    EXPECT_EQ(big.instruction_count(), std::numeric_limits<std::uint64_t>::max());
    GlobalGateSequence none;
    none.append_repeat(0, s);
    EXPECT_TRUE(none.empty());
}

TEST(Sequence, JsonRoundTrip) {
    auto l = slab7();
    auto s = sample(l->group());
    const std::string text = sequence_to_json(s, l->group());
    auto back = parse_sequence(text, l->group());
    EXPECT_EQ(sequence_to_json(back, l->group()), text);
}

TEST(Sequence, FormatErrorsNameTheLine) {
    auto l = slab7();
    const std::string text =
        "{\"format\": \"gqc-sequence\", \"instructions\": [\n"
        " {\"type\": \"two_qubit\", \"generator\": \"A\", \"d\": [1], \"t\": 0.5},\n"
        " {\"type\": \"two_qubit\", \"generator\": \"Q\", \"d\": [1], \"t\": 0.5}\n"
        "]}";
    try {
        parse_sequence(text, l->group());
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Sequence, InverseUndoes) {
    auto l = slab7();
    auto s = sample(l->group());
    s.append_sequence(s.inverse());
    AdmissibleCode code(*l);
    auto support = SiteSupport::full(l->size());
    SequenceRunner runner(l);
    PureState psi = PureState::basis_state(l, code.encode("11"), support);
    PureState out = runner.run(s, psi);
    EXPECT_LT(max_abs_difference(out, psi), 1e-12);
}

TEST(Sequence, FusedRepeatsMatchPlainRun) {
    auto l = slab7();
    LogicalGate gate{GateKind::imag_rot, 1, 0.3, {5}, {6}};
    auto seq = nested_gate_sequence(l, gate, 16, 8);
    AdmissibleCode code(*l);
    auto support = SiteSupport::of(l->size(), reachable_support(*l, seq, code.support_mask()));
    RunOptions plain;
    plain.fuse_repeats = false;
    SequenceRunner fused(l), direct(l, plain);
    PureState psi = PureState::basis_state(l, code.encode("10"), support);
    EXPECT_LT(max_abs_difference(fused.run(seq, psi), direct.run(seq, psi)), 1e-11);
}

TEST(Sequence, SupportReduction) {
    auto l = slab7();
    AdmissibleCode code(*l);
    GlobalGateSequence diag;
    diag.append(TwoQubitGate{{TwoQubitHermitian::projector11(), {5}}, 1.0});
    EXPECT_EQ(reachable_support(*l, diag, code.support_mask()), code.support_mask());
    GlobalGateSequence hop;
    hop.append(TwoQubitGate{{TwoQubitHermitian::imag_family(1), {1}}, 1.0});
    // I1 at d = 1 flips site q + 1 whenever site q holds a 1.
    const auto grown = reachable_support(*l, hop, code.support_mask());
    EXPECT_EQ(grown.bits & code.support_mask().bits, code.support_mask().bits);
    EXPECT_NE(grown, code.support_mask());
}

TEST(Sequence, SimulateEmptyAndDiagonal) {
    auto l = std::make_shared<const Layout>(circle_sixth(12));
    AdmissibleCode code(*l);
    SequenceRunner runner(l);
    auto support = SiteSupport::of(12, code.support_mask());
    PureState psi = PureState::basis_state(l, code.encode("0"), support);
    auto p0 = project_admissible(runner.run(GlobalGateSequence{}, psi));
    EXPECT_EQ(p0.logical(0), cplx(1.0));
    EXPECT_EQ(p0.leakage, 0.0);
    GlobalGateSequence diag;
    diag.append(TwoQubitGate{{TwoQubitHermitian::projector11(), {5}}, 0.7});
    auto p1 = project_admissible(runner.run(diag, PureState::basis_state(l, code.encode("1"), support)));
    EXPECT_EQ(p1.leakage, 0.0);
    EXPECT_NEAR(std::abs(p1.logical(1)), 1.0, 1e-15);
}
