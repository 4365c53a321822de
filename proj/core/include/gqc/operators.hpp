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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gqc/common.hpp"
#include "gqc/lattice.hpp"
#include "gqc/statevec.hpp"

namespace gqc {

/// Two-qubit matrices use the basis |00>,|01>,|10>,|11>; the first tensor
/// factor is site p of the ordered pair (p, q), so the index is 2*a_p + a_q.
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

/// B_delta = |1 delta><0 delta|.
Matrix4 raising_operator(int delta);
/// The 4x4 matrix with the two qubits exchanged.
Matrix4 swap_qubits(const Matrix4& m);
Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// A Hermitian two-qubit generator. Stock generators carry a short name used
/// in sequence files:
///   "A"              |11><11|
///   "R0", "R1"       -i(B_delta - B_delta^dag), so exp(-itR) = exp(-t(B - B^dag))
///   "I0", "I1"       B_delta + B_delta^dag,     so exp(-itI) = exp(-it(B + B^dag))
class TwoQubitHermitian {
   public:
    /// Throws std::invalid_argument unless `m` is Hermitian to 1e-14.
    explicit TwoQubitHermitian(const Matrix4& m, std::string name = {});

    static TwoQubitHermitian projector11();
    static TwoQubitHermitian real_family(int delta);
    static TwoQubitHermitian imag_family(int delta);
    static TwoQubitHermitian from_name(std::string_view name);

    const Matrix4& matrix() const { return m_; }
    /// Empty for explicit matrices.
    const std::string& name() const { return name_; }
    bool is_diagonal() const;

    bool operator==(const TwoQubitHermitian& o) const { return m_ == o.m_ && name_ == o.name_; }

   private:
    Matrix4 m_;
    std::string name_;
};

/// H^(d) = sum over p - q = d of W(p, q) H^(p,q).
struct GlobalHamiltonian {
    TwoQubitHermitian generator;
    GroupElement d;
};

/// Amplitudes keyed by full basis index; used to probe matrix elements of
/// global operators without dense vectors.
using SparseState = std::map<std::uint64_t, cplx>;

/// M^(d) for an arbitrary 4x4 matrix M on a fixed layout. Copies share their
/// kernel caches.
class GlobalOperator {
   public:
    GlobalOperator(std::shared_ptr<const Layout> layout, const Matrix4& m, const GroupElement& d);
    GlobalOperator(std::shared_ptr<const Layout> layout, const GlobalHamiltonian& h);

    const Layout& layout() const;
    const Matrix4& matrix() const;
    const GroupElement& displacement() const;
    const std::vector<SitePair>& pairs() const;
    bool is_diagonal() const;
    /// sum |W| * ||M||_2 over contributing pairs; bounds ||M^(d)||.
    double norm_bound() const;
    GlobalOperator adjoint() const;

    /// out = M^(d) in, both indexed by compressed basis index over `support`.
    /// Throws std::logic_error if M^(d) can move amplitude off the support.
    void apply(const SiteSupport& support, std::span<const cplx> in, std::span<cplx> out) const;
    PureState apply(const PureState& in) const;
    SparseState apply(const SparseState& in) const;

    /// <a|M^(d)|a> by enumeration of the pairs.
    cplx diagonal_entry(BasisIndex a) const;
    /// The diagonal of M^(d) over a support (cached).
    const std::vector<cplx>& diagonal(const SiteSupport& support) const;

    /// True when every pair maps states supported on `support` back into it.
    bool preserves(const SiteSupport& support) const;

   private:
    struct Impl;
    explicit GlobalOperator(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

/// exp(-i t H^(d)) in place over `support`. Diagonal generators use exact
/// phases; others a scaled Taylor series accurate to `tol` in 2-norm.
/// Throws ConvergenceError when the series would need more than 60 terms.
void apply_exponential(const GlobalOperator& h, double t, const SiteSupport& support, std::span<cplx> state,
                       double tol = 1e-12);
PureState apply_global_gate(const PureState& state, const GlobalOperator& h, double t, double tol = 1e-12);

/// The embedded M^(p,q) acting on one pair of sites.
PureState embed_two_qubit(const Matrix4& m, std::size_t p, std::size_t q, const PureState& state);

/// u applied to every site of D. Throws std::invalid_argument unless u is
/// unitary to 1e-10; std::logic_error if u would populate an inactive site.
void apply_global_one_qubit(const Matrix2& u, const SiteSupport& support, std::span<cplx> state);
PureState apply_global_one_qubit(const PureState& state, const Matrix2& u);

/// Generator (u x u) H (u x u)^dag at the same displacement, so that
/// exp(-it H') = u_global exp(-it H) u_global^dag.
GlobalHamiltonian conjugated_hamiltonian(const Matrix2& u, const GlobalHamiltonian& h);

bool is_unitary(const Matrix2& u, double tol = 1e-10);

}  // namespace gqc
