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

#include "gqc/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "parallel_impl.hpp"

namespace gqc {

namespace {

const cplx kI{0.0, 1.0};

// Rows of one embedded pair restricted to a support. rows[o] lists the local
// input states i (with inactive bits zero) and the coefficients w * M(o, i).
struct PairKernel {
    std::uint64_t mask_p = 0;  // compressed bit of p, 0 if p is inactive
    std::uint64_t mask_q = 0;
    struct Entry {
        int in;
        cplx coef;
    };
    std::array<std::vector<Entry>, 4> rows;
};

struct Kernel {
    std::vector<PairKernel> pairs;
};

int local_state(std::uint64_t c, std::uint64_t mask_p, std::uint64_t mask_q) {
    return ((c & mask_p) ? 2 : 0) + ((c & mask_q) ? 1 : 0);
}

// Builds the kernel of w * M^(p,q); returns false when M maps a state on the
// support to one with a 1 on an inactive site.
bool build_pair_kernel(const Matrix4& m, std::size_t p, std::size_t q, double w, const SiteSupport& support,
                       PairKernel& out) {
    const bool p_on = support.is_active(p);
    const bool q_on = support.is_active(q);
    out.mask_p = p_on ? std::uint64_t{1} << support.position(p) : 0;
    out.mask_q = q_on ? std::uint64_t{1} << support.position(q) : 0;
    auto allowed = [&](int s) { return (p_on || !(s & 2)) && (q_on || !(s & 1)); };
    for (int i = 0; i < 4; ++i) {
        if (!allowed(i)) continue;
        for (int o = 0; o < 4; ++o) {
            if (m(o, i) == cplx{}) continue;
            if (!allowed(o)) return false;
            out.rows[static_cast<std::size_t>(o)].push_back({i, w * m(o, i)});
        }
    }
    return true;
}

void run_kernel(const Kernel& k, std::span<const cplx> in, std::span<cplx> out) {
    const auto dim = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t ci = 0; ci < dim; ++ci) {
        const auto c = static_cast<std::uint64_t>(ci);
        cplx acc{};
        for (const auto& pk : k.pairs) {
            const int o = local_state(c, pk.mask_p, pk.mask_q);
            const std::uint64_t base = c & ~(pk.mask_p | pk.mask_q);
            for (const auto& e : pk.rows[static_cast<std::size_t>(o)]) {
                const std::uint64_t src = base | ((e.in & 2) ? pk.mask_p : 0) | ((e.in & 1) ? pk.mask_q : 0);
                acc += e.coef * in[src];
            }
        }
        out[static_cast<std::size_t>(ci)] = acc;
    }
}

double spectral_norm(const Matrix4& m) {
    Eigen::JacobiSVD<Matrix4> svd(m);
    return svd.singularValues()(0);
}

bool is_hermitian(const Matrix4& m, double tol) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace

Matrix4 raising_operator(int delta) {
    if (delta != 0 && delta != 1) throw std::invalid_argument("delta must be 0 or 1");
    Matrix4 b = Matrix4::Zero();
    b(2 + delta, delta) = 1.0;
    return b;
}

Matrix4 swap_qubits(const Matrix4& m) {
    Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
    s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
    return s * m * s;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = a(i, k) * b(j, l);
    return out;
}

TwoQubitHermitian::TwoQubitHermitian(const Matrix4& m, std::string name) : m_(m), name_(std::move(name)) {
    if (!m.allFinite()) throw std::invalid_argument("generator has non-finite entries");
    if (!is_hermitian(m, 1e-14)) throw std::invalid_argument("generator is not Hermitian");
}

TwoQubitHermitian TwoQubitHermitian::projector11() {
    Matrix4 a = Matrix4::Zero();
    a(3, 3) = 1.0;
    return TwoQubitHermitian(a, "A");
}

TwoQubitHermitian TwoQubitHermitian::real_family(int delta) {
    Matrix4 b = raising_operator(delta);
    return TwoQubitHermitian(-kI * (b - b.adjoint()), "R" + std::to_string(delta));
}

TwoQubitHermitian TwoQubitHermitian::imag_family(int delta) {
    Matrix4 b = raising_operator(delta);
    return TwoQubitHermitian(b + b.adjoint(), "I" + std::to_string(delta));
}

TwoQubitHermitian TwoQubitHermitian::from_name(std::string_view name) {
    if (name == "A") return projector11();
    if (name == "R0") return real_family(0);
    if (name == "R1") return real_family(1);
    if (name == "I0") return imag_family(0);
    if (name == "I1") return imag_family(1);
    throw std::invalid_argument("unknown generator name '" + std::string(name) + "'");
}

bool TwoQubitHermitian::is_diagonal() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && m_(i, j) != cplx{}) return false;
    return true;
}

struct GlobalOperator::Impl {
    std::shared_ptr<const Layout> layout;
    Matrix4 m;
    GroupElement d;
    std::vector<SitePair> pairs;
    bool diagonal = true;
    double bound = 0.0;

    std::mutex mu;
    std::map<std::uint64_t, std::shared_ptr<const Kernel>> kernels;
    std::map<std::uint64_t, std::shared_ptr<const std::vector<cplx>>> diagonals;

    std::shared_ptr<const Kernel> kernel(const SiteSupport& support) {
        std::lock_guard lock(mu);
        auto it = kernels.find(support.mask().bits);
        if (it != kernels.end()) return it->second;
        auto k = std::make_shared<Kernel>();
        for (const auto& pr : pairs) {
            if (pr.weight == 0.0) continue;
            PairKernel pk;
            if (!build_pair_kernel(m, pr.p, pr.q, pr.weight, support, pk)) {
                throw std::logic_error("support is not closed under the global operator at pair (" +
                                       layout->group().format(layout->site(pr.p)) + ", " +
                                       layout->group().format(layout->site(pr.q)) + ")");
            }
            k->pairs.push_back(std::move(pk));
        }
        kernels.emplace(support.mask().bits, k);
        return k;
    }
};

GlobalOperator::GlobalOperator(std::shared_ptr<const Layout> layout, const Matrix4& m, const GroupElement& d) {
    if (!layout) throw std::invalid_argument("GlobalOperator needs a layout");
    layout->group().check_element(layout->group().normalize(d));
    GroupElement dd = layout->group().normalize(d);
    if (layout->group().is_zero(dd)) throw std::invalid_argument("displacement must be nonzero");
    if (!m.allFinite()) throw std::invalid_argument("two-qubit matrix has non-finite entries");
    auto impl = std::make_shared<Impl>();
    impl->layout = std::move(layout);
    impl->m = m;
    impl->d = dd;
    impl->pairs = impl->layout->pairs_at(dd);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && m(i, j) != cplx{}) impl->diagonal = false;
    const double mn = spectral_norm(m);
    for (const auto& pr : impl->pairs) impl->bound += std::abs(pr.weight) * mn;
    impl_ = std::move(impl);
}

GlobalOperator::GlobalOperator(std::shared_ptr<const Layout> layout, const GlobalHamiltonian& h)
    : GlobalOperator(std::move(layout), h.generator.matrix(), h.d) {}

const Layout& GlobalOperator::layout() const { return *impl_->layout; }
const Matrix4& GlobalOperator::matrix() const { return impl_->m; }
const GroupElement& GlobalOperator::displacement() const { return impl_->d; }
const std::vector<SitePair>& GlobalOperator::pairs() const { return impl_->pairs; }
bool GlobalOperator::is_diagonal() const { return impl_->diagonal; }
double GlobalOperator::norm_bound() const { return impl_->bound; }

GlobalOperator GlobalOperator::adjoint() const {
    return GlobalOperator(impl_->layout, Matrix4(impl_->m.adjoint()), impl_->d);
}

void GlobalOperator::apply(const SiteSupport& support, std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != support.dimension() || out.size() != support.dimension()) {
        throw std::invalid_argument("buffer size does not match the support");
    }
    if (in.data() == out.data()) throw std::invalid_argument("apply needs distinct input and output buffers");
    run_kernel(*impl_->kernel(support), in, out);
}

PureState GlobalOperator::apply(const PureState& in) const {
    PureState out = in.zeros_like();
    apply(in.support(), in.amplitudes(), out.amplitudes());
    return out;
}

SparseState GlobalOperator::apply(const SparseState& in) const {
    SparseState out;
    for (const auto& [b, amp] : in) {
        if (amp == cplx{}) continue;
        for (const auto& pr : impl_->pairs) {
            if (pr.weight == 0.0) continue;
            const std::uint64_t mp = std::uint64_t{1} << pr.p;
            const std::uint64_t mq = std::uint64_t{1} << pr.q;
            const int i = local_state(b, mp, mq);
            const std::uint64_t base = b & ~(mp | mq);
            for (int o = 0; o < 4; ++o) {
                const cplx v = impl_->m(o, i);
                if (v == cplx{}) continue;
                const std::uint64_t a = base | ((o & 2) ? mp : 0) | ((o & 1) ? mq : 0);
                out[a] += pr.weight * v * amp;
            }
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == cplx{}; });
    return out;
}

cplx GlobalOperator::diagonal_entry(BasisIndex a) const {
    cplx acc{};
    for (const auto& pr : impl_->pairs) {
        const int s = (a.test(pr.p) ? 2 : 0) + (a.test(pr.q) ? 1 : 0);
        acc += pr.weight * impl_->m(s, s);
    }
    return acc;
}

const std::vector<cplx>& GlobalOperator::diagonal(const SiteSupport& support) const {
    {
        std::lock_guard lock(impl_->mu);
        auto it = impl_->diagonals.find(support.mask().bits);
        if (it != impl_->diagonals.end()) return *it->second;
    }
    auto k = impl_->kernel(support);
    auto dg = std::make_shared<std::vector<cplx>>(support.dimension());
    const auto dim = static_cast<std::int64_t>(dg->size());
#pragma omp parallel for schedule(static)
    for (std::int64_t ci = 0; ci < dim; ++ci) {
        const auto c = static_cast<std::uint64_t>(ci);
        cplx acc{};
        for (const auto& pk : k->pairs) {
            const int o = local_state(c, pk.mask_p, pk.mask_q);
            for (const auto& e : pk.rows[static_cast<std::size_t>(o)]) {
                if (e.in == o) acc += e.coef;
            }
        }
        (*dg)[static_cast<std::size_t>(ci)] = acc;
    }
    std::lock_guard lock(impl_->mu);
    return *impl_->diagonals.emplace(support.mask().bits, dg).first->second;
}

bool GlobalOperator::preserves(const SiteSupport& support) const {
    for (const auto& pr : impl_->pairs) {
        if (pr.weight == 0.0) continue;
        PairKernel pk;
        if (!build_pair_kernel(impl_->m, pr.p, pr.q, pr.weight, support, pk)) return false;
    }
    return true;
}

void apply_exponential(const GlobalOperator& h, double t, const SiteSupport& support, std::span<cplx> state,
                       double tol) {
    if (!std::isfinite(t)) throw std::invalid_argument("gate duration must be finite");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (state.size() != support.dimension()) throw std::invalid_argument("buffer size does not match the support");
    if (t == 0.0) return;
    if (h.is_diagonal()) {
        const auto& dg = h.diagonal(support);
        const auto dim = static_cast<std::int64_t>(state.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < dim; ++c) {
            state[static_cast<std::size_t>(c)] *= std::exp(-kI * t * dg[static_cast<std::size_t>(c)]);
        }
        return;
    }
    const double beta = h.norm_bound();
    if (beta == 0.0) return;
    const double total = std::abs(t) * beta;
    const double steps = std::max(1.0, std::ceil(total));
    if (steps > 1e9) throw ResourceLimitError("gate needs more than 1e9 Taylor steps");
    const double theta = total / steps;
    const double per_step = tol / steps;
    // Remainder of the order-K series is at most e^theta theta^(K+1) / (K+1)!.
    constexpr int kMaxDepth = 60;
    int depth = 0;
    double rem = std::exp(theta) * theta;
    while (rem > per_step) {
        ++depth;
        rem *= theta / (depth + 1);
        if (depth > kMaxDepth) {
            throw ConvergenceError("Taylor series needs more than " + std::to_string(kMaxDepth) +
                                   " terms for tolerance " + std::to_string(tol));
        }
    }
    const cplx dt = -kI * (t / steps);
    std::vector<cplx> term(state.begin(), state.end());
    std::vector<cplx> next(state.size());
    const auto n_steps = static_cast<std::int64_t>(steps);
    for (std::int64_t s = 0; s < n_steps; ++s) {
        std::copy(state.begin(), state.end(), term.begin());
        for (int k = 1; k <= depth; ++k) {
            h.apply(support, term, next);
            const cplx f = dt / static_cast<double>(k);
            const auto dim = static_cast<std::int64_t>(state.size());
#pragma omp parallel for schedule(static)
            for (std::int64_t c = 0; c < dim; ++c) {
                const auto i = static_cast<std::size_t>(c);
                term[i] = f * next[i];
                state[i] += term[i];
            }
        }
    }
}

PureState apply_global_gate(const PureState& state, const GlobalOperator& h, double t, double tol) {
    PureState out = state;
    apply_exponential(h, t, out.support(), out.amplitudes(), tol);
    return out;
}

PureState embed_two_qubit(const Matrix4& m, std::size_t p, std::size_t q, const PureState& state) {
    const auto n = state.layout().size();
    if (p == q) throw std::invalid_argument("embed_two_qubit needs two distinct sites");
    if (p >= n || q >= n) throw std::invalid_argument("embed_two_qubit: site outside D");
    Kernel k;
    PairKernel pk;
    if (!build_pair_kernel(m, p, q, 1.0, state.support(), pk)) {
        throw std::logic_error("support is not closed under the embedded operator");
    }
    k.pairs.push_back(std::move(pk));
    PureState out = state.zeros_like();
    run_kernel(k, state.amplitudes(), out.amplitudes());
    return out;
}

bool is_unitary(const Matrix2& u, double tol) {
    return u.allFinite() && (u * u.adjoint() - Matrix2::Identity()).cwiseAbs().maxCoeff() <= tol;
}

void apply_global_one_qubit(const Matrix2& u, const SiteSupport& support, std::span<cplx> state) {
    if (!is_unitary(u)) throw std::invalid_argument("one-qubit gate is not unitary");
    if (state.size() != support.dimension()) throw std::invalid_argument("buffer size does not match the support");
    if (!support.is_full() && u(1, 0) != cplx{}) {
        throw std::logic_error("one-qubit gate populates sites outside the support");
    }
    const auto dim = static_cast<std::int64_t>(state.size());
    for (std::size_t j = 0; j < support.active_count(); ++j) {
        const std::uint64_t bit = std::uint64_t{1} << j;
#pragma omp parallel for schedule(static)
        for (std::int64_t ci = 0; ci < dim; ++ci) {
            const auto c = static_cast<std::uint64_t>(ci);
            if (c & bit) continue;
            const cplx x0 = state[c];
            const cplx x1 = state[c | bit];
            state[c] = u(0, 0) * x0 + u(0, 1) * x1;
            state[c | bit] = u(1, 0) * x0 + u(1, 1) * x1;
        }
    }
    const auto inactive = support.site_count() - support.active_count();
    if (inactive > 0) {
        const cplx f = std::pow(u(0, 0), static_cast<int>(inactive));
        for (auto& x : state) x *= f;
    }
}

PureState apply_global_one_qubit(const PureState& state, const Matrix2& u) {
    PureState out = state;
    apply_global_one_qubit(u, out.support(), out.amplitudes());
    return out;
}

GlobalHamiltonian conjugated_hamiltonian(const Matrix2& u, const GlobalHamiltonian& h) {
    if (!is_unitary(u)) throw std::invalid_argument("conjugating gate is not unitary");
    const Matrix4 k = kron(u, u);
    Matrix4 m = k * h.generator.matrix() * k.adjoint();
    m = (0.5 * (m + m.adjoint())).eval();
    return {TwoQubitHermitian(m), h.d};
}

}  // namespace gqc
