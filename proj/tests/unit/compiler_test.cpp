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

#include "gqc/algebra.hpp"
#include "gqc/circuit_io.hpp"
#include "gqc/compiler.hpp"
#include "gqc/sequence_io.hpp"
#include "oracle.hpp"

using namespace gqc;
namespace t = gqc_test;
using boost::multiprecision::cpp_int;

namespace {

const cplx kI{0.0, 1.0};

std::shared_ptr<const Layout> slab7() { return std::make_shared<const Layout>(grid_slab(1, 7)); }

std::shared_ptr<const Layout> pair_layout() {
    auto g = GroupSpec::grid(1, 2);
    return std::make_shared<const Layout>(g, g.default_sites(), std::vector<GroupElement>{}, GroupElement{0},
                                          GroupElement{1});
}

}  // namespace

TEST(Compiler, WorstCaseRepetitionCountsAreExact) {
    const cpp_int p12 = cpp_int(12) * 12 * 12 * 12 * 12 * 12 * 12 * 12 * 12 * 12 * 12 * 12;
    auto b = paper_bound_N(1.0, 12, 0.1);
    EXPECT_EQ(b.n2, p12 * 100);
    EXPECT_EQ(b.n1, p12 * 1000);
    cpp_int p27 = 1;
    for (int i = 0; i < 12; ++i) p27 *= 27;
    auto c = paper_bound_N(1.5, 18, 0.05);
    EXPECT_EQ(c.n2, p27 * 400);
    EXPECT_EQ(c.n1, p27 * 8000);
    // 1/0.3 is not an integer: ceil(1/0.09) = 12, ceil(1/0.027) = 38.
    auto d = paper_bound_N(1.0, 1, 0.3);
    EXPECT_EQ(d.n2, 12);
    EXPECT_EQ(d.n1, 38);
}

TEST(Compiler, GroupCommutatorMatchesDenseProduct) {
    auto l = pair_layout();
    std::mt19937_64 rng(2);
    const Matrix4 u = t::random_hermitian(4, rng), v = t::random_hermitian(4, rng);
    const std::uint64_t n = 64;
    auto gc = group_commutator_sequence(l, {TwoQubitHermitian(u), {1}, 1.0}, {TwoQubitHermitian(v), {1}, 1.0}, n);
    SequenceRunner runner(l);
    const Eigen::MatrixXcd got = runner.dense_unitary(gc.sequence, SiteSupport::full(2));
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    // The sole pair at d = 1 is (1, 0), the identity embedding.
    const Eigen::MatrixXcd block = t::expm_hermitian(u, -s) * t::expm_hermitian(v, -s) * t::expm_hermitian(u, s) *
                                   t::expm_hermitian(v, s);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Identity(4, 4);
    for (std::uint64_t k = 0; k < n; ++k) want = block * want;
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-11);
    const Eigen::MatrixXcd target = t::expm_hermitian(kI * -(u * v - v * u), 1.0);
    const double e1 = t::opnorm(got - target);
    auto gc4 = group_commutator_sequence(l, {TwoQubitHermitian(u), {1}, 1.0}, {TwoQubitHermitian(v), {1}, 1.0}, 4 * n);
    const double e4 = t::opnorm(runner.dense_unitary(gc4.sequence, SiteSupport::full(2)) - target);
    EXPECT_NEAR(e4 / e1, 0.5, 0.1);
    EXPECT_EQ(gc.sequence.instruction_count(), 4 * n);
}

TEST(Compiler, LogicalGateUnitaryMatchesEmbedding) {
    auto l = std::make_shared<const Layout>(circle_sixth(18));
    LogicalGate g{GateKind::real_rot, 0, 0.4, {12}, {6}};
    const Eigen::MatrixXcd got = logical_gate_unitary(*l, g);
    // Logical bit 0 is site 6, bit 1 is site 12; (p, q) = (12, 6).
    const Matrix4 h = TwoQubitHermitian::real_family(0).matrix();
    const Eigen::MatrixXcd want = t::expm_hermitian(t::embed(2, h, 1, 0), 0.4);
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_TRUE(local_gate_matrix(g).isApprox(t::expm_hermitian(h, 0.4), 1e-14));
}

TEST(Compiler, NestedConstructionConverges) {
    auto l = slab7();
    LogicalGate g{GateKind::imag_rot, 1, 0.3927, {5}, {6}};
    EXPECT_TRUE(nested_gate_sequence(l, LogicalGate{GateKind::imag_rot, 1, 0.0, {5}, {6}}, 8, 8).empty());
    auto coarse = measure_gate_error(l, g, 64, 8);
    auto fine = measure_gate_error(l, g, 4096, 64);
    EXPECT_LT(fine.error, coarse.error);
    EXPECT_LT(fine.error, 0.1);
    EXPECT_LE(fine.leakage, fine.error + 1e-12);
}

TEST(Compiler, RejectsBadGates) {
    auto l = slab7();
    CompilationBudget b;
    b.mode = BudgetMode::fixed;
    b.n1 = b.n2 = 4;
    EXPECT_THROW(compile_local_gate(l, {GateKind::imag_rot, 1, 0.3, {5}, {5}}, b), std::invalid_argument);
    EXPECT_THROW(compile_local_gate(l, {GateKind::imag_rot, 1, 1.5, {5}, {6}}, b), std::invalid_argument);
    EXPECT_THROW(compile_local_gate(l, {GateKind::imag_rot, 1, 0.3, {5}, {4}}, b), std::invalid_argument);
    auto c12 = std::make_shared<const Layout>(circle_sixth(12));
    EXPECT_THROW(compile_local_gate(c12, {GateKind::imag_rot, 1, 0.3, {6}, {1}}, b), std::invalid_argument);
    CompilationBudget paper;
    paper.mode = BudgetMode::paper_bound;
    EXPECT_THROW(compile_local_gate(l, {GateKind::imag_rot, 1, 0.3, {5}, {6}}, paper), ResourceLimitError);
}

TEST(Compiler, SplitsLongGates) {
    auto l = slab7();
    LogicalCircuit c{l, {{GateKind::real_rot, 1, 2.5, {5}, {6}}, {GateKind::imag_rot, 0, -0.5, {6}, {5}}}};
    auto parts = split_circuit(c);
    ASSERT_EQ(parts.size(), 4u);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(parts[static_cast<std::size_t>(i)].T, 2.5 / 3.0, 1e-15);
    EXPECT_EQ(parts[3].T, -0.5);
}

TEST(Compiler, CircuitJsonRoundTrip) {
    auto l = slab7();
    LogicalCircuit c{l, {{GateKind::real_rot, 1, 0.25, {5}, {6}}, {GateKind::imag_rot, 0, -0.5, {6}, {5}}}};
    auto back = parse_circuit(circuit_to_json(c), l);
    EXPECT_EQ(circuit_to_json(back), circuit_to_json(c));
    EXPECT_THROW(parse_circuit(R"([{"kind": "swap", "delta": 1, "T": 0.1, "p": [5], "q": [6]}])", l), FormatError);
}

TEST(Compiler, FileRoundTripIsBitIdentical) {
    auto l = slab7();
    CompilationBudget b;
    b.mode = BudgetMode::fixed;
    b.n1 = 64;
    b.n2 = 16;
    LogicalCircuit c{l, {{GateKind::imag_rot, 1, 0.3, {5}, {6}}, {GateKind::real_rot, 1, -0.2, {6}, {5}}}};
    auto seq = compile_circuit(c, b);
    auto back = parse_sequence(sequence_to_json(seq, l->group()), l->group());
    AdmissibleCode code(*l);
    auto support = SiteSupport::of(l->size(), reachable_support(*l, seq, code.support_mask()));
    PureState psi = PureState::basis_state(l, code.encode("10"), support);
    SequenceRunner r1(l), r2(l);
    EXPECT_EQ(r1.run(seq, psi).data(), r2.run(back, psi).data());
    ASSERT_EQ(seq.metadata.gates.size(), 2u);
    EXPECT_TRUE(seq.metadata.gates[0].measured_error.has_value());
}

TEST(Compiler, CalibrationIsDeterministic) {
    auto l = slab7();
    LogicalGate g{GateKind::imag_rot, 1, 0.3927, {5}, {6}};
    CalibrationCaps caps;
    caps.max_cost = 1 << 16;
    auto a = calibrate_N(l, g, 0.2, caps);
    auto b = calibrate_N(l, g, 0.2, caps);
    EXPECT_EQ(a.n1, b.n1);
    EXPECT_EQ(a.n2, b.n2);
    EXPECT_EQ(a.measurement.error, b.measurement.error);
    EXPECT_EQ(a.probes.size(), b.probes.size());
    EXPECT_EQ(a.met, a.measurement.error <= 0.2);
    EXPECT_TRUE(a.met);
    for (const auto& p : a.probes)
        if (p.measurement.error <= 0.2) EXPECT_GE(p.n1 * p.n2, a.n1 * a.n2);
}
