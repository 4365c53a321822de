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

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gqc/lattice.hpp"
#include "gqc/sequence.hpp"
#include "gqc/simulator.hpp"

namespace gqc {

/// real_rot: exp(-T (B_delta - B_delta^dag)); imag_rot: exp(-iT (B_delta + B_delta^dag)).
enum class GateKind { real_rot, imag_rot };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

struct LogicalGate {
    GateKind kind = GateKind::imag_rot;
    int delta = 1;
    double T = 0.0;
    GroupElement p;
    GroupElement q;
};

std::string describe(const LogicalGate& gate, const GroupSpec& group);

/// The Hermitian H with gate = exp(-iT H^(p,q)).
TwoQubitHermitian gate_generator(GateKind kind, int delta);
/// exp(-iT H) as a 4x4 matrix.
Matrix4 local_gate_matrix(const LogicalGate& gate);
/// The gate on the k logical qubits of `layout` (k <= 10).
Eigen::MatrixXcd logical_gate_unitary(const Layout& layout, const LogicalGate& gate);

struct LogicalCircuit {
    std::shared_ptr<const Layout> layout;
    std::vector<LogicalGate> gates;
};

/// scale * G^(d), emitted as exp(+i theta scale G^(d)) with duration -theta * scale.
struct InstructionRecipe {
    TwoQubitHermitian generator;
    GroupElement d;
    double scale = 1.0;
};

struct GroupCommutatorSequence {
    GlobalGateSequence sequence;
    /// max(||U||, ||V||, 1) from the pair-sum norm bounds.
    double m = 1.0;
    /// M^3 / sqrt(N), the bound with unit constant.
    double predicted_bound = 0.0;
    /// N <= M^2, where the error bound is not claimed.
    bool outside_validity = false;
};

/// (e^{iU/sqrt N} e^{iV/sqrt N} e^{-iU/sqrt N} e^{-iV/sqrt N})^N as a matrix
/// product, approximating exp([-iU, -iV]). The sequence stores one repeat of
/// the block in application order: e^{-iV/sqrt N} acts first.
GroupCommutatorSequence group_commutator_sequence(const std::shared_ptr<const Layout>& layout,
                                                  const InstructionRecipe& u, const InstructionRecipe& v,
                                                  std::uint64_t n);

/// The nested construction for one local gate with N1 inner and N2 outer
/// blocks. With X = A^(p-r)/W(p,r), Y = A^(p-r')/W(p,r'),
/// Z = -T/W(p,q) H^(p-q) and V' = -i[Y, Z], the outer level approximates
/// exp([-iX, -iV']), which acts as exp(-iT H^(p,q)) on admissible states;
/// each exp(+-i V'/sqrt(N2)) is an inner group commutator of Y and -+Z
/// scaled by N2^(-1/4).
GlobalGateSequence nested_gate_sequence(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate,
                                        std::uint64_t n1, std::uint64_t n2);

/// Unit-constant error bound of the nested construction:
/// M2^3/sqrt(N2) + 2 N2 M1^3/sqrt(N1).
double nested_predicted_bound(const Layout& layout, const LogicalGate& gate, std::uint64_t n1, std::uint64_t n2);

enum class BudgetMode { paper_bound, fixed, calibrated };

std::string to_string(BudgetMode mode);

struct CalibrationCaps {
    int max_log2_n1 = 14;
    int max_log2_n2 = 12;
    std::uint64_t max_cost = std::uint64_t{1} << 22;  // N1 * N2
};

struct CompilationBudget {
    double epsilon_total = 0.1;
    BudgetMode mode = BudgetMode::calibrated;
    std::uint64_t n1 = 0;  // fixed mode
    std::uint64_t n2 = 0;
    CalibrationCaps caps;
    /// Largest expanded instruction count a compiled gate may have.
    std::uint64_t max_instructions = std::uint64_t{1} << 40;
    RunOptions run;
};

struct GateMeasurement {
    double error = 0.0;
    double leakage = 0.0;
};

/// Operator-norm distance between the admissible block of the nested
/// sequence and the exact gate, plus the largest leakage.
GateMeasurement measure_gate_error(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate,
                                   std::uint64_t n1, std::uint64_t n2, const RunOptions& run = {});

struct CalibrationProbe {
    std::uint64_t n1;
    std::uint64_t n2;
    GateMeasurement measurement;
};

struct CalibrationResult {
    std::uint64_t n1 = 1;
    std::uint64_t n2 = 1;
    GateMeasurement measurement;
    bool met = false;
    /// Every simulated (N1, N2), in search order.
    std::vector<CalibrationProbe> probes;
};

/// For N2 = 1, 2, 4, ... binary-searches the smallest power-of-two N1 meeting
/// `target`, keeping the cheapest N1 * N2. Deterministic. When nothing meets
/// the target, returns the most accurate probe with met = false.
CalibrationResult calibrate_N(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate, double target,
                              const CalibrationCaps& caps = {}, const RunOptions& run = {});

struct PaperBound {
    boost::multiprecision::cpp_int n1;
    boost::multiprecision::cpp_int n2;
};

/// N2 = ceil(w^12 n^12 / eps^2), N1 = ceil(w^12 n^12 / eps^3) in exact
/// arithmetic; doubles are read as their shortest round-trip decimal.
PaperBound paper_bound_N(double w, std::uint64_t n, double epsilon);

struct CompiledGate {
    GlobalGateSequence sequence;
    GateCompilationInfo info;
};

/// Throws std::invalid_argument on bad gates (|P| < 2, p = q, |T| > 1, zero
/// weights) and ResourceLimitError when the budget exceeds the caps.
CompiledGate compile_local_gate(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate,
                                const CompilationBudget& budget);

/// Gates with |T| > 1 are split into ceil(|T|) equal pieces; each of the l
/// resulting gates is compiled with budget epsilon_total / l.
GlobalGateSequence compile_circuit(const LogicalCircuit& circuit, const CompilationBudget& budget);

/// The gates compile_circuit compiles, after splitting.
std::vector<LogicalGate> split_circuit(const LogicalCircuit& circuit);

}  // namespace gqc
