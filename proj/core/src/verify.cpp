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

#include "gqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gqc/algebra.hpp"
#include "json_util.hpp"

namespace gqc {

namespace {

const cplx kI{0.0, 1.0};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

SparseState unit(std::uint64_t a) { return {{a, cplx{1.0, 0.0}}}; }

SparseState local_apply(const Matrix4& m, std::size_t p, std::size_t q, const SparseState& in) {
    SparseState out;
    const std::uint64_t mp = std::uint64_t{1} << p;
    const std::uint64_t mq = std::uint64_t{1} << q;
    for (const auto& [b, amp] : in) {
        const int i = ((b & mp) ? 2 : 0) + ((b & mq) ? 1 : 0);
        for (int o = 0; o < 4; ++o) {
            if (m(o, i) == cplx{}) continue;
            const std::uint64_t a = (b & ~(mp | mq)) | ((o & 2) ? mp : 0) | ((o & 1) ? mq : 0);
            out[a] += m(o, i) * amp;
        }
    }
    return out;
}

void axpy(SparseState& y, cplx c, const SparseState& x) {
    for (const auto& [k, v] : x) y[k] += c * v;
}

cplx entry(const SparseState& s, std::uint64_t k) {
    auto it = s.find(k);
    return it == s.end() ? cplx{} : it->second;
}

// Largest |x_k - y_k| and the index where it occurs.
std::pair<double, std::uint64_t> max_diff(const SparseState& x, const SparseState& y) {
    std::set<std::uint64_t> keys;
    for (const auto& kv : x) keys.insert(kv.first);
    for (const auto& kv : y) keys.insert(kv.first);
    double worst = 0.0;
    std::uint64_t at = 0;
    for (auto k : keys) {
        const double d = std::abs(entry(x, k) - entry(y, k));
        if (d > worst) {
            worst = d;
            at = k;
        }
    }
    return {worst, at};
}

struct RankOne {
    cplx c;
    SparseState u;
    SparseState v;
};

// max over (x, y) of |sum c u(x) conj(v(y)) - expected E_{a,b}(x, y)|.
double rank_one_deviation(const std::vector<RankOne>& terms, std::uint64_t a, std::uint64_t b, cplx expected) {
    std::set<std::uint64_t> rows{a}, cols{b};
    for (const auto& t : terms) {
        for (const auto& kv : t.u) rows.insert(kv.first);
        for (const auto& kv : t.v) cols.insert(kv.first);
    }
    double worst = 0.0;
    for (auto x : rows) {
        for (auto y : cols) {
            cplx val = (x == a && y == b) ? -expected : cplx{};
            for (const auto& t : terms) val += t.c * entry(t.u, x) * std::conj(entry(t.v, y));
            worst = std::max(worst, std::abs(val));
        }
    }
    return worst;
}

void finish(CheckReport& r) { r.pass = std::isfinite(r.max_deviation) && r.max_deviation <= r.tolerance; }

Eigen::MatrixXcd haar_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            z(i, j) = cplx(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const cplx d = r(j, j);
        q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : cplx{1.0, 0.0};
    }
    return q;
}

Eigen::MatrixXcd random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            z(i, j) = cplx(re, im);
        }
    return 0.5 * (z + z.adjoint());
}

std::shared_ptr<const Layout> bare_circle(int n) {
    auto g = GroupSpec::cyclic(n);
    return std::make_shared<const Layout>(g, g.default_sites(), std::vector<GroupElement>{}, GroupElement{0},
                                          GroupElement{1});
}

std::vector<TwoQubitHermitian> stock_generators() {
    return {TwoQubitHermitian::projector11(), TwoQubitHermitian::real_family(0), TwoQubitHermitian::real_family(1),
            TwoQubitHermitian::imag_family(0), TwoQubitHermitian::imag_family(1)};
}

void fit(ScalingTable& t) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    t.c_fit = 0.0;
    for (const auto& r : t.rows) {
        const double n = static_cast<double>(r.n);
        t.c_fit = std::max(t.c_fit, r.error * std::sqrt(n) / std::pow(t.m, 3));
        if (!(r.error > 1e-14)) continue;
        const double x = std::log(n);
        const double y = std::log(r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) {
        const double den = cnt * sxx - sx * sx;
        t.slope = (cnt * sxy - sx * sy) / den;
        t.intercept = (sy - t.slope * sx) / cnt;
    } else {
        t.slope = std::nan("");
        t.intercept = std::nan("");
    }
    for (auto& r : t.rows) r.bound = t.c_fit * std::pow(t.m, 3) / std::sqrt(static_cast<double>(r.n));
}

Eigen::MatrixXcd matrix_power(Eigen::MatrixXcd base, std::uint64_t e) {
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(base.rows(), base.cols());
    bool first = true;
    while (e > 0) {
        if (e & 1u) {
            result = first ? base : (base * result).eval();
            first = false;
        }
        e >>= 1;
        if (e > 0) base = (base * base).eval();
    }
    return result;
}

Eigen::MatrixXcd dense_on_support(const GlobalOperator& op, const SiteSupport& support) {
    const auto dim = static_cast<Eigen::Index>(support.dimension());
    Eigen::MatrixXcd out(dim, dim);
    std::vector<cplx> in(static_cast<std::size_t>(dim)), col(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
        std::fill(in.begin(), in.end(), cplx{});
        in[static_cast<std::size_t>(j)] = 1.0;
        op.apply(support, in, col);
        for (Eigen::Index i = 0; i < dim; ++i) out(i, j) = col[static_cast<std::size_t>(i)];
    }
    return out;
}

std::vector<GroupElement> nonzero_differences(const Layout& layout) {
    std::set<GroupElement> ds;
    const auto& g = layout.group();
    for (std::size_t i = 0; i < layout.size(); ++i)
        for (std::size_t j = 0; j < layout.size(); ++j)
            if (i != j) ds.insert(g.subtract(layout.site(i), layout.site(j)));
    return {ds.begin(), ds.end()};
}

}  // namespace

std::string describe_layout(const Layout& layout) {
    const auto& g = layout.group();
    std::ostringstream os;
    if (g.is_cyclic()) {
        os << "cyclic(" << g.order() << ")";
    } else {
        os << "grid(l=" << g.rank() << ", m=" << g.side() << ")";
    }
    os << " n=" << layout.size() << " P={";
    for (std::size_t i = 0; i < layout.logical_sites().size(); ++i) {
        os << (i ? "," : "") << g.format(layout.logical_sites()[i]);
    }
    os << "} r=" << g.format(layout.reference()) << " r'=" << g.format(layout.reference_prime())
       << " W=" << (layout.has_uniform_weights() ? "uniform" : "custom");
    return os.str();
}

std::string to_string(BlockFamily family) {
    switch (family) {
        case BlockFamily::real_rot:
            return "real_rot";
        case BlockFamily::imag_rot:
            return "imag_rot";
        case BlockFamily::raising:
            return "raising";
    }
    return "?";
}

CheckReport check_diagonal_formula(const std::shared_ptr<const Layout>& layout, const GroupElement& d,
                                   std::size_t max_sites) {
    const auto& g = layout->group();
    const auto n = layout->size();
    if (n > max_sites) throw ResourceLimitError("diagonal check is exhaustive and capped at n = " + std::to_string(max_sites));
    CheckReport r;
    r.id = "diagonal_formula";
    r.instance = describe_layout(*layout) + " d=" + g.format(d);
    r.tolerance = 1e-12;
    GlobalOperator op(layout, TwoQubitHermitian::projector11().matrix(), d);
    const GroupElement dn = g.normalize(d);
    // Ordered pairs at difference d, found without the operator's own pair list.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (p != q && g.normalize(g.subtract(layout->site(p), layout->site(q))) == dn) pairs.emplace_back(p, q);
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < dim; ++a) {
        double formula = 0.0;
        for (const auto& [p, q] : pairs) {
            if (((a >> p) & 1u) && ((a >> q) & 1u)) formula += layout->weight(p, q);
        }
        SparseState col = op.apply(unit(a));
        SparseState expected{{a, formula}};
        auto [dev, at] = max_diff(col, expected);
        ++r.cases;
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.witness = {"a=" + to_bit_string({a}, n), "row=" + to_bit_string({at}, n)};
        }
    }
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

CheckReport check_addr_comm_eq(const std::shared_ptr<const Layout>& layout, std::uint64_t samples,
                               std::uint64_t seed) {
    const auto& g = layout->group();
    const auto n = layout->size();
    if (n > 62) throw ResourceLimitError("addr-comm-eq check supports at most 62 sites");
    CheckReport r;
    r.id = "addr_comm_eq";
    r.instance = describe_layout(*layout);
    r.tolerance = 1e-12;
    const auto ds = nonzero_differences(*layout);
    std::map<GroupElement, GlobalOperator> ops;
    auto op_for = [&](const GroupElement& d) -> const GlobalOperator& {
        auto it = ops.find(d);
        if (it == ops.end()) it = ops.emplace(d, GlobalOperator(layout, TwoQubitHermitian::projector11().matrix(), d)).first;
        return it->second;
    };
    auto bit_at = [&](std::uint64_t a, const GroupElement& site) -> double {
        auto idx = layout->index_of(g.normalize(site));
        return idx && ((a >> *idx) & 1u) ? 1.0 : 0.0;
    };
    auto one_case = [&](std::uint64_t a, std::size_t q, const GroupElement& d) {
        const std::uint64_t b = a & ~(std::uint64_t{1} << q);
        const auto& op = op_for(d);
        const GroupElement& qs = layout->site(q);
        const GroupElement qm = g.normalize(g.subtract(qs, d));
        const GroupElement qp = g.normalize(g.add(qs, d));
        const cplx coef = bit_at(a, qm) * layout->weight(qs, qm) + bit_at(a, qp) * layout->weight(qp, qs);
        // [A, |a><b|] = A|a><b| - |a><b|A as a sum of two outer products.
        std::vector<RankOne> terms{{1.0, op.apply(unit(a)), unit(b)}, {-1.0, unit(a), op.adjoint().apply(unit(b))}};
        const double dev = rank_one_deviation(terms, a, b, coef);
        ++r.cases;
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.witness = {"a=" + to_bit_string({a}, n), "q=" + g.format(qs), "d=" + g.format(d)};
        }
    };
    if (n <= 6) {
        r.note = "exhaustive";
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a)
            for (std::size_t q = 0; q < n; ++q)
                if ((a >> q) & 1u)
                    for (const auto& d : ds) one_case(a, q, d);
    } else {
        r.note = std::to_string(samples) + " random triples, seed " + std::to_string(seed);
        std::mt19937_64 rng(seed);
        for (std::uint64_t s = 0; s < samples; ++s) {
            const std::size_t q = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
            std::uint64_t a = rng() & ((std::uint64_t{1} << n) - 1);
            a |= std::uint64_t{1} << q;
            const auto& d = ds[std::uniform_int_distribution<std::size_t>(0, ds.size() - 1)(rng)];
            one_case(a, q, d);
        }
    }
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

CheckReport check_addressing_lemma(const std::shared_ptr<const Layout>& layout) {
    const auto& g = layout->group();
    const auto n = layout->size();
    AdmissibleCode code(*layout);
    if (code.logical_qubits() > 4) throw ResourceLimitError("addressing check supports k <= 4");
    CheckReport r;
    r.id = "addressing_lemma";
    r.instance = describe_layout(*layout);
    r.tolerance = 1e-12;
    const auto a_mat = TwoQubitHermitian::projector11().matrix();
    const std::size_t ri = layout->reference_index();
    const std::size_t rpi = layout->reference_prime_index();
    const std::uint64_t support = code.support_mask().bits;
    double worst_first = 0.0, worst_second = 0.0;

    for (std::size_t p : code.logical_sites()) {
        GlobalOperator x(layout, a_mat, g.subtract(layout->site(p), layout->reference()));
        GlobalOperator y(layout, a_mat, g.subtract(layout->site(p), layout->reference_prime()));
        const double w = layout->weight(p, ri) * layout->weight(p, rpi);
        auto run_case = [&](std::uint64_t a, std::size_t q, cplx expected, bool first) {
            const std::uint64_t b = a & ~(std::uint64_t{1} << q);
            SparseState ua = unit(a), vb = unit(b);
            SparseState xa = x.apply(ua), ya = y.apply(ua), xb = x.apply(vb), yb = y.apply(vb);
            // [X,[Y,E]] = XY|a><b| - X|a><b|Y - Y|a><b|X + |a><b|YX.
            std::vector<RankOne> terms{
                {1.0, x.apply(ya), vb}, {-1.0, xa, yb}, {-1.0, ya, xb}, {1.0, ua, x.apply(yb)}};
            const double dev = rank_one_deviation(terms, a, b, expected);
            ++r.cases;
            (first ? worst_first : worst_second) = std::max(first ? worst_first : worst_second, dev);
            if (dev > r.max_deviation) {
                r.max_deviation = dev;
                r.witness = {first ? "admissible a" : "inadmissible a", "a=" + to_bit_string({a}, n),
                             "q=" + g.format(layout->site(q)), "p=" + g.format(layout->site(p))};
            }
        };
        for (auto adm : code.admissible_indices()) {
            // First assertion: a admissible, a_q = 1.
            for (std::size_t q = 0; q < n; ++q) {
                if (!adm.test(q)) continue;
                run_case(adm.bits, q, q == p ? cplx(w) : cplx{}, true);
            }
            // Second assertion: a inadmissible with del_q(a) = adm admissible.
            for (std::size_t q = 0; q < n; ++q) {
                if ((support >> q) & 1u) continue;
                run_case(adm.bits | (std::uint64_t{1} << q), q, cplx{}, false);
            }
        }
    }
    r.note = "first assertion max " + fmt(worst_first) + ", second assertion max " + fmt(worst_second);
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

CheckReport check_block_structure(const std::shared_ptr<const Layout>& layout, const GroupElement& p_site,
                                  const GroupElement& q_site, int delta, BlockFamily family) {
    const auto& g = layout->group();
    const auto n = layout->size();
    AdmissibleCode code(*layout);
    const std::size_t p = layout->require_index(p_site);
    const std::size_t q = layout->require_index(q_site);
    if (p == q) throw std::invalid_argument("block check needs p != q");
    code.logical_position(p);
    code.logical_position(q);
    CheckReport r;
    r.id = "block_structure";
    r.instance = describe_layout(*layout) + " p=" + g.format(p_site) + " q=" + g.format(q_site) +
                 " delta=" + std::to_string(delta) + " family=" + to_string(family);
    r.tolerance = 1e-12;

    Matrix4 m;
    double s = -1.0;
    switch (family) {
        case BlockFamily::real_rot:
            m = TwoQubitHermitian::real_family(delta).matrix();
            break;
        case BlockFamily::imag_rot:
            m = TwoQubitHermitian::imag_family(delta).matrix();
            break;
        case BlockFamily::raising:
            m = raising_operator(delta);
            s = 1.0;
            break;
    }
    const auto a_mat = TwoQubitHermitian::projector11().matrix();
    GlobalOperator x(layout, a_mat, g.subtract(p_site, layout->reference()));
    GlobalOperator y(layout, a_mat, g.subtract(p_site, layout->reference_prime()));
    GlobalOperator md(layout, m, g.subtract(p_site, q_site));
    GlobalOperator mdag = md.adjoint();
    const double coef =
        s * layout->weight(p, q) * layout->weight(p, layout->reference_index()) * layout->weight(p, layout->reference_prime_index());
    double off_block = 0.0;

    auto note_off_block = [&](const SparseState& v) {
        for (const auto& [k, val] : v) {
            if (!code.is_admissible({k})) off_block = std::max(off_block, std::abs(val));
        }
    };
    for (auto adm : code.admissible_indices()) {
        const SparseState e = unit(adm.bits);
        // Column C|b>.
        SparseState col;
        axpy(col, s, x.apply(y.apply(md.apply(e))));
        axpy(col, -s, x.apply(md.apply(y.apply(e))));
        axpy(col, -s, y.apply(md.apply(x.apply(e))));
        axpy(col, s, md.apply(y.apply(x.apply(e))));
        SparseState expected_col;
        axpy(expected_col, coef, local_apply(m, p, q, e));
        auto [dc, at_c] = max_diff(col, expected_col);
        note_off_block(col);
        // Row <a|C, from C^dag|a>.
        SparseState row;
        axpy(row, s, mdag.apply(y.apply(x.apply(e))));
        axpy(row, -s, y.apply(mdag.apply(x.apply(e))));
        axpy(row, -s, x.apply(mdag.apply(y.apply(e))));
        axpy(row, s, x.apply(y.apply(mdag.apply(e))));
        SparseState expected_row;
        axpy(expected_row, coef, local_apply(Matrix4(m.adjoint()), p, q, e));
        auto [dr, at_r] = max_diff(row, expected_row);
        note_off_block(row);
        r.cases += 2;
        if (dc > r.max_deviation) {
            r.max_deviation = dc;
            r.witness = {"column b=" + to_bit_string(adm, n), "row a=" + to_bit_string({at_c}, n)};
        }
        if (dr > r.max_deviation) {
            r.max_deviation = dr;
            r.witness = {"row a=" + to_bit_string(adm, n), "column b=" + to_bit_string({at_r}, n)};
        }
    }
    r.note = "scalar " + fmt(coef) + ", largest admissible/inadmissible coupling " + fmt(off_block);
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

CheckReport check_univ_gates_table() {
    CheckReport r;
    r.id = "univ_gates_table";
    r.instance = "two-qubit generators T, U, V, X, Y, Z";
    r.tolerance = 1e-13;
    for (const auto& row : univ_gates_table()) {
        const double dev = (row.computed - row.expected).cwiseAbs().maxCoeff();
        ++r.cases;
        if (dev > r.max_deviation || r.witness.empty()) {
            if (dev > r.max_deviation) r.max_deviation = dev;
            r.witness = {row.expression};
        }
    }
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

CheckReport check_univ_gates_closure() {
    CheckReport r;
    r.id = "univ_gates_closure";
    r.instance = "Lie closure of T, U, V, X, Y, Z";
    r.tolerance = 0.0;
    std::vector<Eigen::MatrixXcd> gens;
    for (const auto& [name, m] : univ_gates_generators()) gens.emplace_back(m);
    auto c = lie_closure(gens);
    r.cases = 1;
    r.max_deviation = std::abs(static_cast<double>(c.dimension) - 15.0);
    r.note = "closure dimension " + std::to_string(c.dimension) + " (su(4) has 15), identity " +
             (c.contains_identity ? "included" : "not included");
    finish(r);
    if (!r.pass) r.witness = {"dimension=" + std::to_string(c.dimension)};
    return r;
}

CheckReport check_conjugation(int n, int trials, std::uint64_t seed) {
    CheckReport r;
    r.id = "conjugation";
    r.instance = "cyclic(" + std::to_string(n) + ") uniform W, " + std::to_string(trials) + " random u, seed " +
                 std::to_string(seed);
    r.tolerance = 1e-12;
    auto layout = bare_circle(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> tdist(-1.0, 1.0);
    for (int trial = 0; trial < trials; ++trial) {
        const Matrix2 u = haar_unitary(2, rng);
        const Eigen::MatrixXcd ug = dense_global_one_qubit(n, u);
        for (const auto& gen : stock_generators()) {
            for (int d = 1; d <= 2; ++d) {
                const double t = tdist(rng);
                GlobalHamiltonian h{gen, {d}};
                GlobalHamiltonian hc = conjugated_hamiltonian(u, h);
                const Eigen::MatrixXcd lhs = hermitian_expm(dense_matrix(GlobalOperator(layout, hc)), t);
                const Eigen::MatrixXcd rhs =
                    ug * hermitian_expm(dense_matrix(GlobalOperator(layout, h)), t) * ug.adjoint();
                const double dev = spectral_norm(lhs - rhs);
                ++r.cases;
                if (dev > r.max_deviation) {
                    r.max_deviation = dev;
                    r.witness = {"trial=" + std::to_string(trial), "generator=" + gen.name(), "d=" + std::to_string(d)};
                }
            }
        }
    }
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

CheckReport check_conjugation_kernels(int n, int trials, std::uint64_t seed) {
    CheckReport r;
    r.id = "conjugation_kernels";
    r.instance = "cyclic(" + std::to_string(n) + ") uniform W, random states, seed " + std::to_string(seed);
    r.tolerance = 1e-10;
    auto layout = bare_circle(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> tdist(-1.0, 1.0);
    for (int trial = 0; trial < trials; ++trial) {
        const Matrix2 u = haar_unitary(2, rng);
        PureState psi(layout, SiteSupport::full(layout->size()));
        for (auto& x : psi.data()) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            x = cplx(re, im);
        }
        psi.scale(1.0 / psi.norm());
        for (const auto& gen : stock_generators()) {
            const double t = tdist(rng);
            GlobalHamiltonian h{gen, {1}};
            GlobalOperator op(layout, h);
            GlobalOperator opc(layout, conjugated_hamiltonian(u, h));
            PureState lhs = apply_global_gate(psi, opc, t);
            PureState rhs = apply_global_one_qubit(apply_global_gate(apply_global_one_qubit(psi, u.adjoint()), op, t), u);
            const double dev = max_abs_difference(lhs, rhs);
            ++r.cases;
            if (dev > r.max_deviation) {
                r.max_deviation = dev;
                r.witness = {"trial=" + std::to_string(trial), "generator=" + gen.name()};
            }
        }
    }
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

CheckReport check_family_interconversion() {
    CheckReport r;
    r.id = "family_interconversion";
    r.instance = "sigma_x and (1 + i sigma_z)/sqrt 2 on the four gate families";
    r.tolerance = 1e-14;
    Matrix2 sx;
    sx << 0, 1, 1, 0;
    Matrix2 ph;
    ph << cplx(1, 1) / std::sqrt(2.0), 0, 0, cplx(1, -1) / std::sqrt(2.0);
    struct Case {
        std::string label;
        Matrix2 u;
        Matrix4 from;
        Matrix4 to;
    };
    std::vector<Case> cases;
    for (int d = 0; d <= 1; ++d) {
        const auto rd = TwoQubitHermitian::real_family(d).matrix();
        const auto id = TwoQubitHermitian::imag_family(d).matrix();
        const auto rb = TwoQubitHermitian::real_family(1 - d).matrix();
        const auto ib = TwoQubitHermitian::imag_family(1 - d).matrix();
        cases.push_back({"sigma_x: I" + std::to_string(d) + " -> I" + std::to_string(1 - d), sx, id, ib});
        cases.push_back({"sigma_x: R" + std::to_string(d) + " -> -R" + std::to_string(1 - d), sx, rd, -rb});
        cases.push_back({"phase: I" + std::to_string(d) + " -> R" + std::to_string(d), ph, id, rd});
        cases.push_back({"phase: R" + std::to_string(d) + " -> -I" + std::to_string(d), ph, rd, -id});
    }
    for (const auto& c : cases) {
        GlobalHamiltonian h{TwoQubitHermitian(c.from), {1}};
        const double dev = (conjugated_hamiltonian(c.u, h).generator.matrix() - c.to).cwiseAbs().maxCoeff();
        ++r.cases;
        if (dev > r.max_deviation || r.witness.empty()) {
            r.max_deviation = std::max(r.max_deviation, dev);
            r.witness = {c.label};
        }
    }
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

CheckReport check_error_additivity(int lists, std::uint64_t seed) {
    CheckReport r;
    r.id = "error_additivity";
    r.instance = std::to_string(lists) + " random unitary lists, dimension <= 64, seed " + std::to_string(seed);
    r.tolerance = 1e-12;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len_dist(1, 8);
    std::uniform_int_distribution<int> dim_dist(2, 64);
    std::uniform_real_distribution<double> eps_dist(0.0, 0.5);
    double min_slack = std::numeric_limits<double>::infinity();
    for (int l = 0; l < lists; ++l) {
        const int len = len_dist(rng);
        const int dim = dim_dist(rng);
        Eigen::MatrixXcd pa = Eigen::MatrixXcd::Identity(dim, dim);
        Eigen::MatrixXcd pb = pa;
        double sum = 0.0;
        for (int j = 0; j < len; ++j) {
            const Eigen::MatrixXcd a = haar_unitary(dim, rng);
            const Eigen::MatrixXcd h = random_hermitian(dim, rng);
            const Eigen::MatrixXcd b = a * hermitian_expm(h / spectral_norm(h), eps_dist(rng));
            sum += spectral_norm(a - b);
            pa = (pa * a).eval();
            pb = (pb * b).eval();
        }
        const double lhs = spectral_norm(pa - pb);
        const double excess = std::max(0.0, lhs - sum);
        min_slack = std::min(min_slack, sum - lhs);
        ++r.cases;
        if (excess > r.max_deviation) {
            r.max_deviation = excess;
            r.witness = {"list=" + std::to_string(l), "dimension=" + std::to_string(dim)};
        }
    }
    r.note = "smallest slack " + fmt(min_slack);
    finish(r);
    if (r.pass) r.witness.clear();
    return r;
}

Eigen::MatrixXcd reference_logical_unitary(const LogicalCircuit& circuit) {
    if (!circuit.layout) throw std::invalid_argument("circuit has no layout");
    AdmissibleCode code(*circuit.layout);
    if (code.logical_qubits() > 10) throw ResourceLimitError("reference unitaries support at most 10 logical qubits");
    const auto dim = static_cast<Eigen::Index>(code.logical_dimension());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& g : circuit.gates) u = (logical_gate_unitary(*circuit.layout, g) * u).eval();
    return u;
}

EndToEndError end_to_end_error(const LogicalCircuit& circuit, const GlobalGateSequence& sequence,
                               const RunOptions& run) {
    const Eigen::MatrixXcd ref = reference_logical_unitary(circuit);
    SequenceRunner runner(circuit.layout, run);
    auto block = runner.admissible_block(sequence);
    const cplx overlap = (ref.adjoint() * block.block).trace();
    EndToEndError out;
    out.phase = std::abs(overlap) > 0 ? std::arg(overlap) : 0.0;
    out.error = spectral_norm(block.block - std::exp(kI * out.phase) * ref);
    out.leakage = block.leakage;
    return out;
}

Matrix4 random_unit_hermitian(std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    Eigen::MatrixXcd h = random_hermitian(4, rng);
    return h / spectral_norm(h);
}

ScalingTable commutator_scaling(const Matrix4& u, const Matrix4& v, const std::vector<std::uint64_t>& ns,
                                const RunOptions& run) {
    auto g = GroupSpec::grid(1, 2);
    // Two sites; the only pair at d = 1 is (1, 0), so U^(1) is U itself.
    auto layout = std::make_shared<const Layout>(g, g.default_sites(), std::vector<GroupElement>{}, GroupElement{0},
                                                 GroupElement{1});
    const TwoQubitHermitian hu(u), hv(v);
    ScalingTable t;
    t.description = "group commutator of two 4x4 Hermitian matrices";
    t.m = std::max({spectral_norm(u), spectral_norm(v), 1.0});
    const Eigen::MatrixXcd k = -(u * v - v * u);  // [-iU, -iV]
    const Eigen::MatrixXcd target = hermitian_expm(kI * k, 1.0);
    SequenceRunner runner(layout, run);
    const SiteSupport full = SiteSupport::full(2);
    for (auto n : ns) {
        auto gc = group_commutator_sequence(layout, {hu, {1}, 1.0}, {hv, {1}, 1.0}, n);
        const Eigen::MatrixXcd prod = runner.dense_unitary(gc.sequence, full);
        t.rows.push_back({n, spectral_norm(prod - target), 0.0});
    }
    fit(t);
    return t;
}

ScalingTable outer_scaling(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate,
                           const std::vector<std::uint64_t>& ns) {
    AdmissibleCode code(*layout);
    const auto probe = nested_gate_sequence(layout, gate, 1, 1);
    const SiteSupport support = SiteSupport::of(layout->size(), reachable_support(*layout, probe, code.support_mask()));
    if (support.active_count() > 12) {
        throw ResourceLimitError("outer scaling needs a reachable support of at most 12 sites, found " +
                                 std::to_string(support.active_count()));
    }
    const auto& g = layout->group();
    const std::size_t p = layout->require_index(gate.p);
    const std::size_t q = layout->require_index(gate.q);
    const auto a_mat = TwoQubitHermitian::projector11().matrix();
    const Eigen::MatrixXcd x =
        dense_on_support(GlobalOperator(layout, a_mat, g.subtract(gate.p, layout->reference())), support) /
        layout->weight(p, layout->reference_index());
    const Eigen::MatrixXcd y =
        dense_on_support(GlobalOperator(layout, a_mat, g.subtract(gate.p, layout->reference_prime())), support) /
        layout->weight(p, layout->reference_prime_index());
    const Eigen::MatrixXcd z =
        dense_on_support(GlobalOperator(layout, gate_generator(gate.kind, gate.delta).matrix(), g.subtract(gate.p, gate.q)),
                         support) *
        (-gate.T / layout->weight(p, q));
    const Eigen::MatrixXcd vp = -kI * (y * z - z * y);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ev(0.5 * (vp + vp.adjoint()));
    auto exp_v = [&](double s) {  // exp(i s V')
        Eigen::VectorXcd ph = (kI * s * ev.eigenvalues().cast<cplx>()).array().exp();
        return Eigen::MatrixXcd(ev.eigenvectors() * ph.asDiagonal() * ev.eigenvectors().adjoint());
    };
    auto exp_x = [&](double s) {  // X is diagonal
        Eigen::VectorXcd ph = (kI * s * x.diagonal()).array().exp();
        return Eigen::MatrixXcd(ph.asDiagonal());
    };
    std::vector<Eigen::Index> adm;
    for (auto b : code.admissible_indices()) adm.push_back(static_cast<Eigen::Index>(support.compress(b)));
    const Eigen::MatrixXcd target = logical_gate_unitary(*layout, gate);

    ScalingTable t;
    t.description = "outer group commutator with exact inner exponential, " + describe(gate, g);
    t.m = std::max({spectral_norm(x), spectral_norm(vp), 1.0});
    for (auto n : ns) {
        const double s = 1.0 / std::sqrt(static_cast<double>(n));
        const Eigen::MatrixXcd block = exp_x(s) * exp_v(s) * exp_x(-s) * exp_v(-s);
        const Eigen::MatrixXcd prod = matrix_power(block, n);
        Eigen::MatrixXcd restricted(static_cast<Eigen::Index>(adm.size()), static_cast<Eigen::Index>(adm.size()));
        for (std::size_t i = 0; i < adm.size(); ++i)
            for (std::size_t j = 0; j < adm.size(); ++j)
                restricted(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = prod(adm[i], adm[j]);
        t.rows.push_back({n, spectral_norm(restricted - target), 0.0});
    }
    fit(t);
    return t;
}

ScalingTable nested_scaling(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate, std::uint64_t n1,
                            const std::vector<std::uint64_t>& n2s, const RunOptions& run) {
    ScalingTable t;
    t.description = "nested construction with N1 = " + std::to_string(n1) + ", " + describe(gate, layout->group()) +
                    ", M taken as 1";
    for (auto n2 : n2s) t.rows.push_back({n2, measure_gate_error(layout, gate, n1, n2, run).error, 0.0});
    fit(t);
    return t;
}

std::string scaling_csv(const ScalingTable& table) {
    std::ostringstream os;
    os.precision(17);
    os << "N,error,bound\n";
    for (const auto& r : table.rows) os << r.n << "," << r.error << "," << r.bound << "\n";
    return os.str();
}

std::vector<CheckReport> run_suite(const std::shared_ptr<const Layout>& layout, const std::string& suite,
                                   const VerifyOptions& options) {
    static const std::set<std::string> known{"all", "diagonal", "addressing", "blocks", "scaling"};
    if (!known.count(suite)) throw std::invalid_argument("unknown suite '" + suite + "'");
    const auto& g = layout->group();
    const bool all = suite == "all";
    std::vector<CheckReport> out;
    AdmissibleCode code(*layout);

    if (all || suite == "diagonal") {
        std::set<GroupElement> ds;
        GroupElement unit_d = g.zero();
        unit_d.back() = 1;
        ds.insert(g.normalize(unit_d));
        for (const auto& p : layout->logical_sites()) {
            ds.insert(g.normalize(g.subtract(p, layout->reference())));
            ds.insert(g.normalize(g.subtract(p, layout->reference_prime())));
        }
        for (const auto& d : ds) {
            if (!g.is_zero(d)) out.push_back(check_diagonal_formula(layout, d));
        }
    }
    if (all || suite == "addressing") {
        out.push_back(check_addr_comm_eq(layout, options.addr_samples, options.seed));
        out.push_back(check_addressing_lemma(layout));
    }
    if (all || suite == "blocks") {
        for (const auto& p : layout->logical_sites())
            for (const auto& q : layout->logical_sites()) {
                if (p == q) continue;
                for (int delta = 0; delta <= 1; ++delta)
                    for (auto fam : {BlockFamily::real_rot, BlockFamily::imag_rot, BlockFamily::raising})
                        out.push_back(check_block_structure(layout, p, q, delta, fam));
            }
    }
    if (all || suite == "scaling") {
        std::vector<std::uint64_t> ns;
        for (std::uint64_t n = 16; n <= 4096; n *= 2) ns.push_back(n);
        auto t = commutator_scaling(random_unit_hermitian(options.seed), random_unit_hermitian(options.seed + 1), ns,
                                    options.run);
        CheckReport r;
        r.id = "commutator_scaling";
        r.instance = "random 4x4 Hermitian U, V with norm 1, N = 16..4096, seed " + std::to_string(options.seed);
        r.tolerance = 0.1;
        r.cases = t.rows.size();
        r.max_deviation = std::abs(t.slope + 0.5);
        r.note = "slope " + fmt(t.slope) + ", c_fit " + fmt(t.c_fit);
        finish(r);
        out.push_back(r);
        if (code.logical_qubits() >= 2) {
            LogicalGate gate{GateKind::imag_rot, 1, 0.3927, layout->logical_sites()[0], layout->logical_sites()[1]};
            std::vector<std::uint64_t> n2s;
            for (std::uint64_t n = 16; n <= 1024; n *= 2) n2s.push_back(n);
            auto o = outer_scaling(layout, gate, n2s);
            CheckReport ro;
            ro.id = "outer_scaling";
            ro.instance = describe_layout(*layout) + " " + describe(gate, g) + ", N2 = 16..1024";
            ro.tolerance = 0.15;
            ro.cases = o.rows.size();
            ro.max_deviation = std::abs(o.slope + 0.5);
            ro.note = "slope " + fmt(o.slope) + ", c_fit " + fmt(o.c_fit);
            finish(ro);
            out.push_back(ro);
        }
    }
    return out;
}

std::string report_to_json(const std::vector<CheckReport>& checks, const std::string& subject, std::uint64_t seed) {
    detail::ordered_json j;
    j["format"] = "gqc-report";
    j["version"] = std::string(kVersion);
    j["subject"] = subject;
    j["seed"] = seed;
    bool all_pass = true;
    detail::ordered_json list = detail::ordered_json::array();
    for (const auto& c : checks) {
        detail::ordered_json e;
        e["id"] = c.id;
        e["instance"] = c.instance;
        e["max_deviation"] = c.max_deviation;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        e["cases"] = c.cases;
        if (!c.witness.empty()) e["witness"] = c.witness;
        if (!c.note.empty()) e["note"] = c.note;
        list.push_back(std::move(e));
        all_pass = all_pass && c.pass;
    }
    j["all_pass"] = all_pass;
    j["checks"] = std::move(list);
    return j.dump(1) + "\n";
}

}  // namespace gqc
