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

#include <algorithm>
#include <random>
#include <set>

#include "gqc/algebra.hpp"
#include "oracle.hpp"

using namespace gqc;
namespace t = gqc_test;

namespace {

const cplx kI{0.0, 1.0};

std::uint64_t rotate(std::uint64_t a, int n) { return ((a << 1) | (a >> (n - 1))) & ((std::uint64_t{1} << n) - 1); }

std::uint64_t reflect(std::uint64_t a, int n) {
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i)
        if ((a >> i) & 1u) out |= std::uint64_t{1} << ((n - i) % n);
    return out;
}

std::uint64_t brute_necklaces(int n) {
    std::set<std::uint64_t> reps;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
        std::uint64_t m = a, b = a;
        for (int k = 0; k < n; ++k) m = std::min(m, b = rotate(b, n));
        reps.insert(m);
    }
    return reps.size();
}

Eigen::MatrixXcd pauli(char c) {
    Eigen::Matrix2cd m;
    if (c == 'x') m << 0, 1, 1, 0;
    if (c == 'y') m << 0, -kI, kI, 0;
    if (c == 'z') m << 1, 0, 0, -1;
    return m;
}

}  // namespace

TEST(Algebra, NecklaceCounts) {
    for (int n = 1; n <= 12; ++n) EXPECT_EQ(necklace_count(n), brute_necklaces(n)) << n;
    EXPECT_EQ(necklace_count(3), 4u);
    EXPECT_EQ(necklace_count(7), 20u);
    EXPECT_EQ(necklace_count(1), 2u);
}

TEST(Algebra, ShiftEigenspace) {
    for (int n : {3, 6, 7}) {
        const Eigen::MatrixXcd v = shift_eigenspace_basis(n);
        EXPECT_EQ(static_cast<std::uint64_t>(v.cols()), brute_necklaces(n));
        EXPECT_TRUE((v.adjoint() * v).isApprox(Eigen::MatrixXcd::Identity(v.cols(), v.cols()), 1e-14));
        Eigen::MatrixXcd shifted = Eigen::MatrixXcd::Zero(v.rows(), v.cols());
        for (Eigen::Index a = 0; a < v.rows(); ++a) shifted.row(static_cast<Eigen::Index>(rotate(static_cast<std::uint64_t>(a), n))) = v.row(a);
        EXPECT_LT((shifted - v).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Algebra, ClosureSmallCases) {
    EXPECT_EQ(lie_closure({kI * pauli('z')}).dimension, 1u);
    EXPECT_EQ(lie_closure({kI * pauli('x'), kI * pauli('z')}).dimension, 3u);
    EXPECT_THROW(lie_closure({pauli('x')}), std::invalid_argument);
}

TEST(Algebra, TwoQubitGeneratorsSpanSu4) {
    std::vector<Eigen::MatrixXcd> gens;
    for (const auto& [name, m] : univ_gates_generators()) gens.emplace_back(m);
    auto c = lie_closure(gens);
    EXPECT_EQ(c.dimension, 15u);
    EXPECT_FALSE(c.contains_identity);
    for (const auto& row : univ_gates_table()) EXPECT_LT((row.computed - row.expected).cwiseAbs().maxCoeff(), 1e-13) << row.expression;
    // [U, Y] = 2i(|11><11| - |01><01|), computed here from the definitions.
    const Matrix4 b1 = raising_operator(1);
    const Matrix4 u = b1 - b1.adjoint();
    const Matrix4 y = kI * (b1 + b1.adjoint());
    Matrix4 want = Matrix4::Zero();
    want(3, 3) = 2.0 * kI;
    want(1, 1) = -2.0 * kI;
    EXPECT_LT((u * y - y * u - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Algebra, ClosureIgnoresOrderAndBasis) {
    const int n = 4;
    const Eigen::MatrixXcd v = shift_eigenspace_basis(n);
    std::vector<Eigen::MatrixXcd> gens;
    for (char c : {'x', 'y', 'z'}) gens.push_back(kI * v.adjoint() * dense_one_qubit_sum(n, pauli(c)) * v);
    gens.push_back(kI * v.adjoint() * dense_circle_two_qubit(n, TwoQubitHermitian::projector11().matrix(), 1) * v);
    const auto base = lie_closure(gens).dimension;
    EXPECT_EQ(base, 36u);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 3; ++trial) {
        auto shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(lie_closure(shuffled).dimension, base);
        const Eigen::MatrixXcd w = t::random_unitary(v.cols(), rng);
        std::vector<Eigen::MatrixXcd> conj;
        for (const auto& g : gens) conj.push_back(w * g * w.adjoint());
        EXPECT_EQ(lie_closure(conj).dimension, base);
    }
}

TEST(Algebra, UniversalityDefaultSet) {
    auto r3 = universality_check(3);
    EXPECT_TRUE(r3.universal);
    EXPECT_EQ(r3.eigenspace_dimension, 4u);
    EXPECT_EQ(r3.algebra, "u");
    EXPECT_TRUE(universality_check(5).universal);
    GateSet z_only;
    z_only.sigma_x = z_only.sigma_y = false;
    z_only.two_qubit.reset();
    auto rz = universality_check(3, z_only);
    EXPECT_FALSE(rz.universal);
    EXPECT_LE(rz.closure_dimension, 2u);
}

// Every default generator commutes with the reflection i -> -i, so the closure
// at n = 6 fits inside u(a) + u(b) for the reflection eigenspaces.
TEST(Algebra, ReflectionBoundsDefaultSetAtSix) {
    const int n = 6;
    const Eigen::MatrixXcd v = shift_eigenspace_basis(n);
    Eigen::MatrixXcd refl = Eigen::MatrixXcd::Zero(64, 64);
    for (std::uint64_t a = 0; a < 64; ++a) refl(static_cast<Eigen::Index>(reflect(a, n)), static_cast<Eigen::Index>(a)) = 1.0;
    const Eigen::MatrixXcd rs = v.adjoint() * refl * v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rs + rs.adjoint()));
    std::size_t plus = 0, minus = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) (es.eigenvalues()(i) > 0 ? plus : minus)++;
    EXPECT_EQ(minus, 1u);
    auto r = universality_check(n);
    EXPECT_FALSE(r.universal);
    EXPECT_LE(r.closure_dimension, plus * plus + minus * minus);
    GateSet chiral;
    chiral.two_qubit = TwoQubitHermitian::imag_family(1).matrix();
    EXPECT_TRUE(universality_check(n, chiral).universal);
}

TEST(Algebra, Norms) {
    std::mt19937_64 rng(4);
    const Eigen::MatrixXcd m = t::random_matrix(50, 50, rng);
    EXPECT_NEAR(operator_norm(m), t::opnorm(m), 1e-10 * t::opnorm(m));
    EXPECT_NEAR(operator_norm(Eigen::MatrixXcd::Identity(16, 16)), 1.0, 1e-13);
    EXPECT_NEAR(operator_norm(TwoQubitHermitian::projector11().matrix()), 1.0, 1e-13);
    EXPECT_NEAR(spectral_norm(m), t::opnorm(m), 1e-10);
    auto l = std::make_shared<const Layout>(circle_sixth(12));
    GlobalOperator a(l, TwoQubitHermitian::projector11().matrix(), {1});
    const auto full = SiteSupport::full(12);
    auto apply = [&](const Eigen::VectorXcd& x) {
        Eigen::VectorXcd y(x.size());
        a.apply(full, std::span<const cplx>(x.data(), static_cast<std::size_t>(x.size())),
                std::span<cplx>(y.data(), static_cast<std::size_t>(y.size())));
        return y;
    };
    EXPECT_NEAR(operator_norm(apply, apply, 4096), 12.0, 1e-9);
}

TEST(Algebra, HermitianExponential) {
    std::mt19937_64 rng(9);
    const Eigen::MatrixXcd h = t::random_hermitian(8, rng);
    const Eigen::MatrixXcd u = hermitian_expm(h, 0.7);
    EXPECT_TRUE((u * u.adjoint()).isApprox(Eigen::MatrixXcd::Identity(8, 8), 1e-13));
    EXPECT_TRUE(u.isApprox(t::expm_hermitian(h, 0.7), 1e-13));
}
