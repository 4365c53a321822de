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
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gqc/compiler.hpp"
#include "gqc/lattice.hpp"
#include "gqc/simulator.hpp"

namespace gqc {

struct CheckReport {
    std::string id;
    std::string instance;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// Number of matrix elements, states or trials compared.
    std::uint64_t cases = 0;
    /// Labels of the worst case when the check fails.
    std::vector<std::string> witness;
    std::string note;
};

/// One-line summary of a layout: group, P, r, r', and whether W is uniform.
std::string describe_layout(const Layout& layout);

/// <a|A^(d)|a> from the operator against the direct pair-weight sum, for every
/// basis state a (n <= max_sites).
CheckReport check_diagonal_formula(const std::shared_ptr<const Layout>& layout, const GroupElement& d,
                                   std::size_t max_sites = 18);

/// [A^(d), E_{a,del_q(a)}] against (a_{q-d} W(q,q-d) + a_{q+d} W(q+d,q)) E_{a,del_q(a)}.
/// Exhaustive over (a, q, d) for n <= 6, otherwise `samples` random triples.
CheckReport check_addr_comm_eq(const std::shared_ptr<const Layout>& layout, std::uint64_t samples = 1000,
                               std::uint64_t seed = 0);

/// Both assertions of the addressing lemma for the double commutator
/// [A^(p-r), [A^(p-r'), E_{a,del_q(a)}]] (k <= 4).
CheckReport check_addressing_lemma(const std::shared_ptr<const Layout>& layout);

/// real_rot and imag_rot check [-iA^(p-r), [-iA^(p-r'), H^(p-q)]] against
/// -W(p,q)W(p,r)W(p,r') H^(p,q); raising checks [A^(p-r), [A^(p-r'), B^(p-q)]]
/// against +W(p,q)W(p,r)W(p,r') B^(p,q). Every row and column with an
/// admissible index is compared.
enum class BlockFamily { real_rot, imag_rot, raising };
std::string to_string(BlockFamily family);

CheckReport check_block_structure(const std::shared_ptr<const Layout>& layout, const GroupElement& p,
                                  const GroupElement& q, int delta, BlockFamily family);

/// The fifteen bracket-table identities of the two-qubit universality lemma
/// (tolerance 1e-13).
CheckReport check_univ_gates_table();
/// Lie closure of the six lemma generators against dim su(4) = 15.
CheckReport check_univ_gates_closure();

/// exp(-it H') = u_global exp(-it H) u_global^dag for the conjugated
/// generator, with dense matrices at n sites, every stock generator and
/// `trials` random one-qubit unitaries.
CheckReport check_conjugation(int n = 6, int trials = 20, std::uint64_t seed = 0);
/// The same identity through the state-vector kernels on random states.
CheckReport check_conjugation_kernels(int n = 6, int trials = 5, std::uint64_t seed = 0);
/// sigma_x maps I_delta to I_(1-delta) and R_delta to -R_(1-delta); the phase
/// gate (1 + i sigma_z)/sqrt 2 maps I_delta to R_delta and R_delta to -I_delta.
CheckReport check_family_interconversion();

/// ||A_1...A_N - B_1...B_N|| <= sum ||A_j - B_j|| on random unitary lists of
/// dimension <= 64. The deviation is the largest excess of the left side.
CheckReport check_error_additivity(int lists = 100, std::uint64_t seed = 0);

/// Product of the exact gates on the logical qubits.
Eigen::MatrixXcd reference_logical_unitary(const LogicalCircuit& circuit);

struct EndToEndError {
    double error = 0.0;
    double leakage = 0.0;
    double phase = 0.0;
};

/// Distance between the admissible block of the sequence and the reference
/// unitary after removing a global phase. The phase is arg tr(U_ref^dag R),
/// which minimizes the Frobenius distance ||R - e^{i phi} U_ref||_F; the
/// reported error is the operator norm at that phase.
EndToEndError end_to_end_error(const LogicalCircuit& circuit, const GlobalGateSequence& sequence,
                               const RunOptions& run = {});

struct ScalingRow {
    std::uint64_t n = 0;
    double error = 0.0;
    double bound = 0.0;
};

struct ScalingTable {
    std::string description;
    std::vector<ScalingRow> rows;
    /// Least-squares slope and intercept of log(error) against log(N).
    double slope = 0.0;
    double intercept = 0.0;
    /// max over rows of error sqrt(N) / M^3, so every row satisfies
    /// error <= c_fit M^3 / sqrt(N).
    double c_fit = 0.0;
    double m = 1.0;
};

/// The group commutator of two 4x4 Hermitian matrices, compiled and simulated
/// on a two-site layout where the pair sum is the matrix itself, against
/// exp([-iU, -iV]).
ScalingTable commutator_scaling(const Matrix4& u, const Matrix4& v, const std::vector<std::uint64_t>& ns,
                                const RunOptions& run = {});

/// Outer-level scaling of the nested construction with the inner commutator
/// exponentiated exactly, computed densely over the reachable support.
ScalingTable outer_scaling(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate,
                           const std::vector<std::uint64_t>& ns);

/// The full nested construction with a fixed N1, sweeping N2.
ScalingTable nested_scaling(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate, std::uint64_t n1,
                            const std::vector<std::uint64_t>& n2s, const RunOptions& run = {});

/// Header "N,error,bound", one line per row.
std::string scaling_csv(const ScalingTable& table);

/// A Hermitian 4x4 matrix with spectral norm 1 drawn from `rng_seed`.
Matrix4 random_unit_hermitian(std::uint64_t rng_seed);

struct VerifyOptions {
    std::uint64_t seed = 0;
    std::uint64_t addr_samples = 1000;
    RunOptions run;
};

/// Suites: "diagonal", "addressing", "blocks", "scaling", "all".
std::vector<CheckReport> run_suite(const std::shared_ptr<const Layout>& layout, const std::string& suite,
                                   const VerifyOptions& options = {});

/// Deterministic JSON report; no timings.
std::string report_to_json(const std::vector<CheckReport>& checks, const std::string& subject, std::uint64_t seed);

}  // namespace gqc
