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

#include "gqc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gqc {

namespace {

const cplx kI{0.0, 1.0};

void check_square(const Eigen::MatrixXcd& x, const char* what) {
    if (x.rows() != x.cols()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
    if (x.rows() > kMaxDenseDimension) {
        throw ResourceLimitError(std::string(what) + ": dimension " + std::to_string(x.rows()) + " exceeds the cap of " +
                                 std::to_string(kMaxDenseDimension));
    }
}

Eigen::VectorXcd start_vector(Eigen::Index dim) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        v[i] = cplx(re, im);
    }
    return v.normalized();
}

std::optional<double> power_iteration(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                                      const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adjoint,
                                      Eigen::Index dim, double tol, int max_iterations) {
    if (dim == 0) return 0.0;
    Eigen::VectorXcd v = start_vector(dim);
    double lambda = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXcd w = apply_adjoint(apply(v));
        const double next = std::abs(v.dot(w));  // Rayleigh quotient of X^dag X
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        if (it > 0 && std::abs(next - lambda) <= tol * next) return std::sqrt(next);
        lambda = next;
    }
    return std::nullopt;
}

Matrix4 ketbra(int a, int b) {
    Matrix4 m = Matrix4::Zero();
    m(a, b) = 1.0;
    return m;
}

// Real coordinates of a matrix: real parts then imaginary parts.
Eigen::VectorXd realify(const Eigen::MatrixXcd& m) {
    const Eigen::Index n = m.size();
    Eigen::VectorXd v(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = m.data()[i].real();
        v[n + i] = m.data()[i].imag();
    }
    return v;
}

}  // namespace

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
        throw std::invalid_argument("commutator: shape mismatch");
    }
    return x * y - y * x;
}

double spectral_norm(const Eigen::MatrixXcd& x) {
    if (x.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(x);
    return svd.singularValues()(0);
}

double operator_norm(const Eigen::MatrixXcd& x, double tol, int max_iterations) {
    check_square(x, "operator_norm");
    auto r = power_iteration([&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return x * v; },
                             [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return x.adjoint() * v; },
                             x.rows(), tol, max_iterations);
    if (r) return *r;
    if (x.rows() <= 256) return spectral_norm(x);
    throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iterations) + " iterations");
}

double operator_norm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                     const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adjoint,
                     Eigen::Index dimension, double tol, int max_iterations) {
    auto r = power_iteration(apply, apply_adjoint, dimension, tol, max_iterations);
    if (!r) {
        throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iterations) +
                               " iterations");
    }
    return *r;
}

Eigen::MatrixXcd dense_matrix(const GlobalOperator& op) {
    const auto n = op.layout().size();
    if (n > 10) throw ResourceLimitError("dense_matrix supports at most 10 sites");
    const SiteSupport full = SiteSupport::full(n);
    const auto dim = static_cast<Eigen::Index>(full.dimension());
    Eigen::MatrixXcd out(dim, dim);
    std::vector<cplx> in(static_cast<std::size_t>(dim)), col(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
        std::fill(in.begin(), in.end(), cplx{});
        in[static_cast<std::size_t>(j)] = 1.0;
        op.apply(full, in, col);
        for (Eigen::Index i = 0; i < dim; ++i) out(i, j) = col[static_cast<std::size_t>(i)];
    }
    return out;
}

Eigen::MatrixXcd dense_one_qubit_sum(int n, const Matrix2& h) {
    if (n < 1 || n > 10) throw ResourceLimitError("dense_one_qubit_sum supports 1 <= n <= 10");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int site = 0; site < n; ++site) {
        const Eigen::Index bit = Eigen::Index{1} << site;
        for (Eigen::Index b = 0; b < dim; ++b) {
            const int in = (b & bit) ? 1 : 0;
            for (int o = 0; o < 2; ++o) {
                if (h(o, in) == cplx{}) continue;
                const Eigen::Index a = o ? (b | bit) : (b & ~bit);
                out(a, b) += h(o, in);
            }
        }
    }
    return out;
}

Eigen::MatrixXcd dense_circle_two_qubit(int n, const Matrix4& m, int d) {
    if (n < 2 || n > 10) throw ResourceLimitError("dense_circle_two_qubit supports 2 <= n <= 10");
    const int dd = ((d % n) + n) % n;
    if (dd == 0) throw std::invalid_argument("displacement must be nonzero mod n");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int p = 0; p < n; ++p) {
        const int q = ((p - dd) % n + n) % n;
        const Eigen::Index bp = Eigen::Index{1} << p;
        const Eigen::Index bq = Eigen::Index{1} << q;
        for (Eigen::Index b = 0; b < dim; ++b) {
            const int in = ((b & bp) ? 2 : 0) + ((b & bq) ? 1 : 0);
            for (int o = 0; o < 4; ++o) {
                if (m(o, in) == cplx{}) continue;
                Eigen::Index a = b & ~(bp | bq);
                if (o & 2) a |= bp;
                if (o & 1) a |= bq;
                out(a, b) += m(o, in);
            }
        }
    }
    return out;
}

Eigen::MatrixXcd dense_global_one_qubit(int n, const Matrix2& u) {
    if (n < 1 || n > 10) throw ResourceLimitError("dense_global_one_qubit supports 1 <= n <= 10");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
    // Site n-1 is the most significant bit.
    for (int site = n - 1; site >= 0; --site) {
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) next(2 * i + a, 2 * j + b) = out(i, j) * u(a, b);
        out = std::move(next);
    }
    return out;
}

Eigen::MatrixXcd hermitian_expm(const Eigen::MatrixXcd& h, double t) {
    check_square(h, "hermitian_expm");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
    Eigen::VectorXcd phases = (-kI * t * es.eigenvalues().cast<cplx>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

LieClosureResult lie_closure(const std::vector<Eigen::MatrixXcd>& generators, double tol, std::size_t max_dimension) {
    LieClosureResult out;
    if (generators.empty()) {
        out.saturated = true;
        return out;
    }
    const Eigen::Index dim = generators.front().rows();
    for (const auto& g : generators) {
        check_square(g, "lie_closure");
        if (g.rows() != dim) throw std::invalid_argument("lie_closure: generators differ in dimension");
        const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
        if ((g + g.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
            throw std::invalid_argument("lie_closure: generator is not anti-Hermitian");
        }
    }
    const auto full = static_cast<std::size_t>(dim * dim);
    if (max_dimension == 0) max_dimension = full;

    const Eigen::Index len = 2 * dim * dim;
    Eigen::MatrixXd q(len, 0);  // orthonormal real coordinates of the basis
    q.resize(len, static_cast<Eigen::Index>(std::min(full, max_dimension)));
    Eigen::Index count = 0;

    // Residues are measured against `ref`. Brackets of orthonormal basis
    // elements use ref = 1, so rounding noise from nearly commuting pairs is
    // not mistaken for a new direction.
    auto try_add = [&](const Eigen::MatrixXcd& m, double ref) -> bool {
        Eigen::VectorXd v = realify(m);
        const double norm = v.norm();
        if (norm == 0.0) return false;
        if (ref <= 0.0) ref = norm;
        for (int pass = 0; pass < 2; ++pass) {
            if (count > 0) {
                auto qb = q.leftCols(count);
                v -= qb * (qb.transpose() * v);
            }
        }
        const double res = v.norm();
        if (res <= tol * ref) return false;
        if (static_cast<std::size_t>(count) >= max_dimension) {
            throw ResourceLimitError("Lie closure exceeds the dimension cap of " + std::to_string(max_dimension));
        }
        q.col(count) = v / res;
        Eigen::MatrixXcd b(dim, dim);
        for (Eigen::Index i = 0; i < dim * dim; ++i) b.data()[i] = cplx(q(i, count), q(dim * dim + i, count));
        out.basis.push_back(std::move(b));
        ++count;
        return true;
    };

    for (const auto& g : generators) try_add(g, 0.0);
    std::size_t frontier_begin = 0;
    while (true) {
        const std::size_t frontier_end = out.basis.size();
        if (frontier_begin == frontier_end || out.basis.size() == full) {
            out.saturated = true;
            break;
        }
        ++out.sweeps;
        for (std::size_t i = frontier_begin; i < frontier_end && out.basis.size() < full; ++i) {
            for (std::size_t j = 0; j < i && out.basis.size() < full; ++j) {
                try_add(commutator(out.basis[i], out.basis[j]), 1.0);
            }
        }
        frontier_begin = frontier_end;
    }
    out.dimension = out.basis.size();

    Eigen::VectorXd id = realify(kI * Eigen::MatrixXcd::Identity(dim, dim));
    const double idn = id.norm();
    if (count > 0) {
        auto qb = q.leftCols(count);
        id -= qb * (qb.transpose() * id);
        id -= qb * (qb.transpose() * id);
    }
    out.contains_identity = id.norm() <= tol * idn;
    return out;
}

std::uint64_t necklace_count(int n) {
    if (n < 1 || n > 62) throw std::invalid_argument("necklace_count needs 1 <= n <= 62");
    // Burnside: (1/n) sum over d | n of phi(d) 2^(n/d).
    std::uint64_t total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int phi = 0;
        for (int k = 1; k <= d; ++k) phi += std::gcd(k, d) == 1 ? 1 : 0;
        total += static_cast<std::uint64_t>(phi) << (n / d);
    }
    return total / static_cast<std::uint64_t>(n);
}

Eigen::MatrixXcd shift_eigenspace_basis(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("shift_eigenspace_basis needs 1 <= n <= 12");
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t all = dim - 1;
    auto shift = [&](std::uint64_t a) { return ((a << 1) | (a >> (n - 1))) & all; };
    std::vector<std::vector<std::uint64_t>> orbits;
    std::vector<bool> seen(dim, false);
    for (std::uint64_t a = 0; a < dim; ++a) {
        if (seen[a]) continue;
        std::vector<std::uint64_t> orbit;
        std::uint64_t b = a;
        do {
            seen[b] = true;
            orbit.push_back(b);
            b = shift(b);
        } while (b != a);
        orbits.push_back(std::move(orbit));
    }
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(orbits.size()));
    for (std::size_t k = 0; k < orbits.size(); ++k) {
        const double w = 1.0 / std::sqrt(static_cast<double>(orbits[k].size()));
        for (auto a : orbits[k]) v(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) = w;
    }
    return v;
}

UniversalityResult universality_check(int n, const GateSet& gates) {
    if (n < 2 || n > 10) throw ResourceLimitError("universality_check supports 2 <= n <= 10");
    const Eigen::MatrixXcd v = shift_eigenspace_basis(n);
    std::vector<Eigen::MatrixXcd> hams;
    Matrix2 sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, -kI, kI, 0;
    sz << 1, 0, 0, -1;
    if (gates.sigma_x) hams.push_back(dense_one_qubit_sum(n, sx));
    if (gates.sigma_y) hams.push_back(dense_one_qubit_sum(n, sy));
    if (gates.sigma_z) hams.push_back(dense_one_qubit_sum(n, sz));
    if (gates.two_qubit) hams.push_back(dense_circle_two_qubit(n, *gates.two_qubit, gates.distance));
    for (const auto& m : gates.extra_two_qubit) hams.push_back(dense_circle_two_qubit(n, m, gates.distance));

    std::vector<Eigen::MatrixXcd> gens;
    for (const auto& h : hams) gens.push_back(kI * (v.adjoint() * h * v));
    auto closure = lie_closure(gens);

    UniversalityResult r;
    r.n = n;
    r.eigenspace_dimension = static_cast<std::size_t>(v.cols());
    r.closure_dimension = closure.dimension;
    r.target_u = r.eigenspace_dimension * r.eigenspace_dimension;
    r.target_su = r.target_u - 1;
    r.contains_identity = closure.contains_identity;
    r.sweeps = closure.sweeps;
    if (r.closure_dimension == r.target_u) {
        r.algebra = "u";
    } else if (r.closure_dimension == r.target_su && !r.contains_identity) {
        r.algebra = "su";
    } else {
        r.algebra = "proper";
    }
    r.universal = r.algebra != "proper";
    return r;
}

std::vector<std::pair<std::string, Matrix4>> univ_gates_generators() {
    // |ab> has index 2a + b.
    const Matrix4 u = ketbra(3, 1) - ketbra(1, 3);
    const Matrix4 y = kI * ketbra(3, 1) + kI * ketbra(1, 3);
    const Matrix4 t = ketbra(3, 2) - ketbra(2, 3);
    const Matrix4 x = kI * ketbra(3, 2) + kI * ketbra(2, 3);
    const Matrix4 v = ketbra(2, 0) - ketbra(0, 2);
    const Matrix4 z = kI * ketbra(2, 0) + kI * ketbra(0, 2);
    return {{"T", t}, {"U", u}, {"V", v}, {"X", x}, {"Y", y}, {"Z", z}};
}

std::vector<BracketIdentity> univ_gates_table() {
    std::map<std::string, Matrix4> g;
    for (auto& [name, m] : univ_gates_generators()) g[name] = m;
    auto br = [](const Matrix4& a, const Matrix4& b) -> Matrix4 { return a * b - b * a; };
    const Matrix4 b0 = raising_operator(0);
    const Matrix4 b1 = raising_operator(1);
    const Matrix4 U = g["U"], V = g["V"], T = g["T"], X = g["X"], Y = g["Y"], Z = g["Z"];

    std::vector<BracketIdentity> out;
    // The generators against the gate Hamiltonians and the qubit exchange.
    out.push_back({"U = B1 - B1^dag", b1 - b1.adjoint(), U});
    out.push_back({"Y = i(B1 + B1^dag)", kI * (b1 + b1.adjoint()), Y});
    out.push_back({"V = B0 - B0^dag", b0 - b0.adjoint(), V});
    out.push_back({"Z = i(B0 + B0^dag)", kI * (b0 + b0.adjoint()), Z});
    out.push_back({"T = swap(U)", swap_qubits(U), T});
    out.push_back({"X = swap(Y)", swap_qubits(Y), X});
    out.push_back({"[V,T]", br(V, T), ketbra(0, 3) - ketbra(3, 0)});
    out.push_back({"[T,Z]", br(T, Z), kI * ketbra(0, 3) + kI * ketbra(3, 0)});
    out.push_back({"[T,U]", br(T, U), ketbra(1, 2) - ketbra(2, 1)});
    out.push_back({"[Y,T]", br(Y, T), kI * ketbra(1, 2) + kI * ketbra(2, 1)});
    out.push_back({"[[V,T],U]", br(br(V, T), U), ketbra(0, 1) - ketbra(1, 0)});
    out.push_back({"[[T,Z],U]", br(br(T, Z), U), kI * ketbra(0, 1) + kI * ketbra(1, 0)});
    out.push_back({"[U,Y]", br(U, Y), 2.0 * kI * (ketbra(3, 3) - ketbra(1, 1))});
    out.push_back({"[T,X]", br(T, X), 2.0 * kI * (ketbra(3, 3) - ketbra(2, 2))});
    out.push_back({"[V,Z]", br(V, Z), 2.0 * kI * (ketbra(2, 2) - ketbra(0, 0))});
    return out;
}

}  // namespace gqc
