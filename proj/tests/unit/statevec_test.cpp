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

#include "gqc/lattice.hpp"
#include "gqc/statevec.hpp"

using namespace gqc;

namespace {
std::shared_ptr<const Layout> c18() { return std::make_shared<const Layout>(circle_sixth(18)); }
}  // namespace

TEST(Statevec, BitStrings) {
    EXPECT_EQ(to_bit_string({0b101}, 4), "1010");
    EXPECT_EQ(from_bit_string("1010").bits, 0b101u);
}

TEST(Statevec, AdmissibleEncoding) {
    auto l = c18();
    AdmissibleCode code(*l);
    ASSERT_EQ(code.logical_qubits(), 2u);
    // Logical bit 0 on site 6, bit 1 on site 12; references at 1 and 2.
    EXPECT_EQ(code.encode("10").bits, (1u << 1) | (1u << 2) | (1u << 6));
    EXPECT_EQ(code.encode("01").bits, (1u << 1) | (1u << 2) | (1u << 12));
    EXPECT_EQ(code.encode(std::uint64_t{3}).bits, (1u << 1) | (1u << 2) | (1u << 6) | (1u << 12));
    EXPECT_EQ(code.admissible_indices().size(), 4u);
    for (std::uint64_t b = 0; b < 4; ++b) EXPECT_EQ(code.decode(code.encode(b)), b);
    EXPECT_FALSE(code.is_admissible({1u << 6}));
    EXPECT_FALSE(code.is_admissible(code.encode(std::uint64_t{0}).with(3, true)));
    EXPECT_EQ(code.support_mask().bits, (1u << 1) | (1u << 2) | (1u << 6) | (1u << 12));
}

TEST(Statevec, SupportCompression) {
    auto s = SiteSupport::of(10, {0b1010010001});
    EXPECT_EQ(s.active_count(), 4u);
    for (std::uint64_t c = 0; c < s.dimension(); ++c) EXPECT_EQ(s.compress(s.expand(c)), c);
    EXPECT_TRUE(s.contains({0b1000000001}));
    EXPECT_FALSE(s.contains({0b10}));
}

TEST(Statevec, ProjectionAndLeakage) {
    auto l = c18();
    AdmissibleCode code(*l);
    auto support = SiteSupport::of(18, code.support_mask().with(3, true));
    PureState psi = PureState::basis_state(l, code.encode("11"), support);
    auto proj = project_admissible(psi);
    EXPECT_EQ(proj.leakage, 0.0);
    EXPECT_EQ(proj.logical(3), cplx(1.0));
    PureState bad = PureState::basis_state(l, code.encode("11").with(3, true), support);
    EXPECT_NEAR(project_admissible(bad).leakage, 1.0, 1e-15);
    EXPECT_NEAR(project_admissible(bad).logical.norm(), 0.0, 1e-15);
}

TEST(Statevec, PrepareLogicalAndDump) {
    auto l = c18();
    Eigen::VectorXcd v(4);
    v << 0.6, 0.0, cplx(0.0, 0.8), 0.0;
    PureState psi = prepare_logical(l, v);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
    auto dump = dump_state(psi);
    ASSERT_EQ(dump.size(), 2u);
    EXPECT_EQ(dump[0].bits, "011000000000000000");
    EXPECT_EQ(dump[0].re, 0.6);
    EXPECT_EQ(dump[1].bits, "011000000000100000");
    EXPECT_EQ(dump[1].im, 0.8);
    auto init = prepare_initial(l);
    EXPECT_EQ(init.amplitude(AdmissibleCode(*l).encode(std::uint64_t{0})), cplx(1.0));
}

TEST(Statevec, RestrictIdentity) {
    auto l = c18();
    AdmissibleCode code(*l);
    auto m = restrict_operator([](const PureState& s) { return s; }, l, SiteSupport::of(18, code.support_mask()));
    EXPECT_TRUE(m.isApprox(Eigen::MatrixXcd::Identity(4, 4)));
}

TEST(Statevec, WidenKeepsAmplitudes) {
    auto l = c18();
    AdmissibleCode code(*l);
    auto small = SiteSupport::of(18, code.support_mask());
    PureState psi = PureState::basis_state(l, code.encode("01"), small);
    PureState wide = psi.widened(SiteSupport::of(18, code.support_mask().with(0, true)));
    EXPECT_EQ(wide.amplitude(code.encode("01")), cplx(1.0));
    EXPECT_EQ(wide.data().size(), 2 * psi.data().size());
}
