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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gqc/operators.hpp"

namespace gqc {

/// Dense operators are capped at this dimension.
inline constexpr Eigen::Index kMaxDenseDimension = 1024;

struct DenseOperator {
    Eigen::MatrixXcd matrix;
    std::string label;
};

/// XY - YX. Throws std::invalid_argument on a shape mismatch.
Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

/// Largest singular value by power iteration on X^dag X from a fixed start
/// vector, to relative accuracy `tol`. Falls back to a full SVD for dimension
/// <= 256 when the iteration stalls; throws ConvergenceError otherwise.
double operator_norm(const Eigen::MatrixXcd& x, double tol = 1e-13, int max_iterations = 20000);

/// Matrix-free variant: `apply(v)` returns Xv and `apply_adjoint(v)` X^dag v.
double operator_norm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                     const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adjoint,
                     Eigen::Index dimension, double tol = 1e-13, int max_iterations = 20000);

/// Largest singular value from a full SVD.
double spectral_norm(const Eigen::MatrixXcd& x);

/// The 2^n x 2^n matrix of a global operator (n <= 10).
Eigen::MatrixXcd dense_matrix(const GlobalOperator& op);

/// sum over sites of h on that site, for n qubits (bit i is qubit i).
Eigen::MatrixXcd dense_one_qubit_sum(int n, const Matrix2& h);
/// sum over p of M^(p, p - d mod n) on a circle of n uniformly weighted sites.
Eigen::MatrixXcd dense_circle_two_qubit(int n, const Matrix4& m, int d);
/// The global one-qubit gate u on every one of n qubits.
Eigen::MatrixXcd dense_global_one_qubit(int n, const Matrix2& u);

/// exp(-i t H) for Hermitian H by eigendecomposition.
Eigen::MatrixXcd hermitian_expm(const Eigen::MatrixXcd& h, double t);

struct LieClosureResult {
    std::size_t dimension = 0;
    /// Orthonormal under Re tr(A^dag B).
    std::vector<Eigen::MatrixXcd> basis;
    /// True when the last sweep found no new direction, or the closure
    /// filled all anti-Hermitian matrices.
    bool saturated = false;
    int sweeps = 0;
    /// Whether i * identity lies in the closure.
    bool contains_identity = false;
};

/// Real Lie algebra generated by anti-Hermitian matrices. A bracket counts as
/// new when its residual after projection exceeds `tol` times its norm.
/// Throws ResourceLimitError when the dimension would exceed `max_dimension`.
LieClosureResult lie_closure(const std::vector<Eigen::MatrixXcd>& generators, double tol = 1e-8,
                             std::size_t max_dimension = 0);

/// Number of binary necklaces of length n.
std::uint64_t necklace_count(int n);

/// Orthonormal columns spanning the eigenvalue-1 eigenspace of the cyclic
/// shift on n qubits, one normalized orbit sum per necklace, ordered by the
/// smallest bitmask in each orbit. Requires 1 <= n <= 12.
Eigen::MatrixXcd shift_eigenspace_basis(int n);

/// Global one-qubit Hamiltonians (summed Pauli terms) plus one global
/// two-qubit Hamiltonian at a fixed distance on a uniformly weighted circle.
struct GateSet {
    bool sigma_x = true;
    bool sigma_y = true;
    bool sigma_z = true;
    std::optional<Matrix4> two_qubit = TwoQubitHermitian::projector11().matrix();
    int distance = 1;
    std::vector<Matrix4> extra_two_qubit;
    std::string label = "A";
};

struct UniversalityResult {
    int n = 0;
    std::size_t eigenspace_dimension = 0;
    std::size_t closure_dimension = 0;
    std::size_t target_u = 0;   // dim u(D) = D^2
    std::size_t target_su = 0;  // dim su(D) = D^2 - 1
    bool universal = false;
    bool contains_identity = false;
    /// "u", "su", or "proper".
    std::string algebra;
    int sweeps = 0;
};

UniversalityResult universality_check(int n, const GateSet& gates = {});

/// The six generators T, U, V, X, Y, Z of the two-qubit universality lemma.
std::vector<std::pair<std::string, Matrix4>> univ_gates_generators();

struct BracketIdentity {
    std::string expression;
    Matrix4 computed;
    Matrix4 expected;
};

/// The fifteen basis elements of su(4) listed in the lemma: the six
/// generators (T and X as qubit-exchanged U and Y) and nine brackets.
std::vector<BracketIdentity> univ_gates_table();

}  // namespace gqc
