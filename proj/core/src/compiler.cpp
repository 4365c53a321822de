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

#include "gqc/compiler.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gqc/algebra.hpp"

namespace gqc {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

const cplx kI{0.0, 1.0};

// The shortest decimal that round-trips to x, as an exact rational.
cpp_rational exact_decimal(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    bool negative = false;
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') {
        negative = true;
        ++i;
    }
    cpp_int mantissa = 0;
    long exponent = 0;
    bool fraction = false;
    for (; i < s.size() && s[i] != 'e'; ++i) {
        if (s[i] == '.') {
            fraction = true;
            continue;
        }
        mantissa = mantissa * 10 + (s[i] - '0');
        if (fraction) --exponent;
    }
    if (i < s.size()) exponent += std::stol(s.substr(i + 1));
    cpp_rational r(mantissa);
    cpp_int ten = 1;
    for (long k = 0; k < std::labs(exponent); ++k) ten *= 10;
    if (exponent >= 0) {
        r *= ten;
    } else {
        r /= ten;
    }
    return negative ? cpp_rational(-r) : r;
}

cpp_int ceil_positive(const cpp_rational& r) {
    cpp_int num = boost::multiprecision::numerator(r);
    cpp_int den = boost::multiprecision::denominator(r);
    cpp_int q = num / den;
    if (q * den < num) ++q;
    return q;
}

struct GateSites {
    std::size_t p, q, r, rp;
    GroupElement d_pr, d_prp, d_pq;
    double w_pr, w_prp, w_pq;
};

GateSites resolve(const Layout& layout, const LogicalGate& gate) {
    if (layout.logical_count() < 2) {
        throw std::invalid_argument("compiling a two-qubit gate needs |P| >= 2, this layout has |P| = " +
                                    std::to_string(layout.logical_count()));
    }
    if (gate.delta != 0 && gate.delta != 1) throw std::invalid_argument("delta must be 0 or 1");
    if (!std::isfinite(gate.T) || std::abs(gate.T) > 1.0) {
        throw std::invalid_argument("gate parameter must satisfy -1 <= T <= 1");
    }
    const auto& g = layout.group();
    GateSites s{};
    s.p = layout.require_index(gate.p);
    s.q = layout.require_index(gate.q);
    if (s.p == s.q) throw std::invalid_argument("gate sites p and q must differ");
    const auto logical = layout.logical_indices();
    for (auto x : {s.p, s.q}) {
        if (std::find(logical.begin(), logical.end(), x) == logical.end()) {
            throw std::invalid_argument("gate site " + g.format(layout.site(x)) + " is not in P");
        }
    }
    s.r = layout.reference_index();
    s.rp = layout.reference_prime_index();
    s.d_pr = g.subtract(gate.p, layout.reference());
    s.d_prp = g.subtract(gate.p, layout.reference_prime());
    s.d_pq = g.subtract(gate.p, gate.q);
    s.w_pr = layout.weight(s.p, s.r);
    s.w_prp = layout.weight(s.p, s.rp);
    s.w_pq = layout.weight(s.p, s.q);
    auto need = [&](double w, std::size_t a, std::size_t b) {
        if (w == 0.0) {
            throw std::invalid_argument("zero weight W(" + g.format(layout.site(a)) + ", " + g.format(layout.site(b)) +
                                        ") on a pair the construction needs");
        }
    };
    need(s.w_pr, s.p, s.r);
    need(s.w_prp, s.p, s.rp);
    need(s.w_pq, s.p, s.q);
    return s;
}

void emit(GlobalGateSequence& seq, const InstructionRecipe& rec, double theta) {
    seq.append(TwoQubitGate{{rec.generator, rec.d}, -theta * rec.scale});
}

double recipe_norm(const std::shared_ptr<const Layout>& layout, const InstructionRecipe& rec) {
    return std::abs(rec.scale) * GlobalOperator(layout, rec.generator.matrix(), rec.d).norm_bound();
}

}  // namespace

std::string to_string(GateKind kind) { return kind == GateKind::real_rot ? "real_rot" : "imag_rot"; }

GateKind gate_kind_from_string(const std::string& name) {
    if (name == "real_rot") return GateKind::real_rot;
    if (name == "imag_rot") return GateKind::imag_rot;
    throw std::invalid_argument("unknown gate kind '" + name + "' (expected real_rot or imag_rot)");
}

std::string to_string(BudgetMode mode) {
    switch (mode) {
        case BudgetMode::paper_bound:
            return "paper";
        case BudgetMode::fixed:
            return "fixed";
        case BudgetMode::calibrated:
            return "calibrated";
    }
    return "?";
}

std::string describe(const LogicalGate& gate, const GroupSpec& group) {
    char t[32];
    auto res = std::to_chars(t, t + sizeof t, gate.T);
    std::ostringstream os;
    os << to_string(gate.kind) << "(delta=" << gate.delta << ", T=" << std::string_view(t, res.ptr - t) << ", p=" << group.format(gate.p)
       << ", q=" << group.format(gate.q) << ")";
    return os.str();
}

TwoQubitHermitian gate_generator(GateKind kind, int delta) {
    return kind == GateKind::real_rot ? TwoQubitHermitian::real_family(delta) : TwoQubitHermitian::imag_family(delta);
}

Matrix4 local_gate_matrix(const LogicalGate& gate) {
    const Eigen::MatrixXcd h = gate_generator(gate.kind, gate.delta).matrix();
    return hermitian_expm(h, gate.T);
}

Eigen::MatrixXcd logical_gate_unitary(const Layout& layout, const LogicalGate& gate) {
    AdmissibleCode code(layout);
    if (code.logical_qubits() > 10) throw ResourceLimitError("logical unitaries support at most 10 logical qubits");
    const std::size_t jp = code.logical_position(layout.require_index(gate.p));
    const std::size_t jq = code.logical_position(layout.require_index(gate.q));
    if (jp == jq) throw std::invalid_argument("gate sites p and q must differ");
    const Matrix4 g = local_gate_matrix(gate);
    const auto dim = static_cast<Eigen::Index>(code.logical_dimension());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    const std::uint64_t mp = std::uint64_t{1} << jp;
    const std::uint64_t mq = std::uint64_t{1} << jq;
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(dim); ++b) {
        const int in = ((b & mp) ? 2 : 0) + ((b & mq) ? 1 : 0);
        for (int o = 0; o < 4; ++o) {
            const std::uint64_t a = (b & ~(mp | mq)) | ((o & 2) ? mp : 0) | ((o & 1) ? mq : 0);
            u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g(o, in);
        }
    }
    return u;
}

GroupCommutatorSequence group_commutator_sequence(const std::shared_ptr<const Layout>& layout,
                                                  const InstructionRecipe& u, const InstructionRecipe& v,
                                                  std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("group commutator needs N >= 1");
    GroupCommutatorSequence out;
    const double t = 1.0 / std::sqrt(static_cast<double>(n));
    GlobalGateSequence block;
    emit(block, v, -t);
    emit(block, u, -t);
    emit(block, v, t);
    emit(block, u, t);
    out.sequence.append_repeat(n, std::move(block));
    out.m = std::max({recipe_norm(layout, u), recipe_norm(layout, v), 1.0});
    out.predicted_bound = std::pow(out.m, 3) * t;
    out.outside_validity = static_cast<double>(n) <= out.m * out.m;
    return out;
}

GlobalGateSequence nested_gate_sequence(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate,
                                        std::uint64_t n1, std::uint64_t n2) {
    const GateSites s = resolve(*layout, gate);
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("N1 and N2 must be positive");
    GlobalGateSequence seq;
    if (gate.T == 0.0) return seq;

    const auto a = TwoQubitHermitian::projector11();
    const auto h = gate_generator(gate.kind, gate.delta);
    const double s_in = std::pow(static_cast<double>(n2), -0.25);
    const double t_out = 1.0 / std::sqrt(static_cast<double>(n2));
    const InstructionRecipe x{a, s.d_pr, 1.0 / s.w_pr};
    const InstructionRecipe y{a, s.d_prp, s_in / s.w_prp};
    const InstructionRecipe z_plus{h, s.d_pq, s_in * gate.T / s.w_pq};    // -(-T/W) s
    const InstructionRecipe z_minus{h, s.d_pq, -s_in * gate.T / s.w_pq};  // (-T/W) s

    auto plus = group_commutator_sequence(layout, y, z_plus, n1).sequence;
    auto minus = group_commutator_sequence(layout, y, z_minus, n1).sequence;

    GlobalGateSequence body;
    body.append_sequence(minus);
    emit(body, x, -t_out);
    body.append_sequence(plus);
    emit(body, x, t_out);
    seq.append_repeat(n2, std::move(body));
    return seq;
}

double nested_predicted_bound(const Layout& layout, const LogicalGate& gate, std::uint64_t n1, std::uint64_t n2) {
    const GateSites s = resolve(layout, gate);
    auto lp = std::make_shared<const Layout>(layout);
    const auto a = TwoQubitHermitian::projector11().matrix();
    const double nx = GlobalOperator(lp, a, s.d_pr).norm_bound() / std::abs(s.w_pr);
    const double ny = GlobalOperator(lp, a, s.d_prp).norm_bound() / std::abs(s.w_prp);
    const double nz = GlobalOperator(lp, gate_generator(gate.kind, gate.delta).matrix(), s.d_pq).norm_bound() *
                      std::abs(gate.T) / std::abs(s.w_pq);
    const double sc = std::pow(static_cast<double>(n2), -0.25);
    const double m1 = std::max({sc * ny, sc * nz, 1.0});
    const double m2 = std::max({nx, 2.0 * ny * nz, 1.0});
    return std::pow(m2, 3) / std::sqrt(static_cast<double>(n2)) +
           2.0 * static_cast<double>(n2) * std::pow(m1, 3) / std::sqrt(static_cast<double>(n1));
}

GateMeasurement measure_gate_error(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate,
                                   std::uint64_t n1, std::uint64_t n2, const RunOptions& run) {
    auto seq = nested_gate_sequence(layout, gate, n1, n2);
    SequenceRunner runner(layout, run);
    auto block = runner.admissible_block(seq);
    const Eigen::MatrixXcd target = logical_gate_unitary(*layout, gate);
    return {spectral_norm(block.block - target), block.leakage};
}

CalibrationResult calibrate_N(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate, double target,
                              const CalibrationCaps& caps, const RunOptions& run) {
    if (!(target > 0.0)) throw std::invalid_argument("calibration target must be positive");
    resolve(*layout, gate);
    CalibrationResult out;
    std::map<std::pair<int, int>, GateMeasurement> memo;
    auto probe = [&](int a, int b) -> const GateMeasurement& {
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const std::uint64_t n1 = std::uint64_t{1} << a;
        const std::uint64_t n2 = std::uint64_t{1} << b;
        auto m = measure_gate_error(layout, gate, n1, n2, run);
        out.probes.push_back({n1, n2, m});
        return memo.emplace(key, m).first->second;
    };

    std::optional<std::pair<int, int>> best;
    auto cost = [](int a, int b) { return std::uint64_t{1} << (a + b); };
    for (int b = 0; b <= caps.max_log2_n2; ++b) {
        if (best && cost(0, b) >= cost(best->first, best->second)) break;
        int a_hi = caps.max_log2_n1;
        while (a_hi >= 0 && (cost(a_hi, b) > caps.max_cost || (best && cost(a_hi, b) >= cost(best->first, best->second)))) {
            --a_hi;
        }
        if (a_hi < 0) continue;
        if (probe(a_hi, b).error > target) continue;
        int lo = 0, hi = a_hi;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (probe(mid, b).error <= target) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        best = std::make_pair(lo, b);
    }

    if (best) {
        out.n1 = std::uint64_t{1} << best->first;
        out.n2 = std::uint64_t{1} << best->second;
        out.measurement = memo.at(*best);
        out.met = true;
        return out;
    }
    // Nothing met the target: report the most accurate probe.
    const CalibrationProbe* closest = nullptr;
    for (const auto& p : out.probes) {
        if (!closest || p.measurement.error < closest->measurement.error) closest = &p;
    }
    if (closest) {
        out.n1 = closest->n1;
        out.n2 = closest->n2;
        out.measurement = closest->measurement;
    }
    out.met = false;
    return out;
}

PaperBound paper_bound_N(double w, std::uint64_t n, double epsilon) {
    if (!(w >= 1.0) || !std::isfinite(w)) throw std::invalid_argument("paper_bound_N needs w >= 1");
    if (n < 1) throw std::invalid_argument("paper_bound_N needs n >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("paper_bound_N needs 0 < epsilon < 1");
    const cpp_rational wr = exact_decimal(w);
    const cpp_rational er = exact_decimal(epsilon);
    cpp_rational base = 1;
    for (int i = 0; i < 12; ++i) base *= wr * cpp_rational(cpp_int(n));
    PaperBound out;
    out.n2 = ceil_positive(base / (er * er));
    out.n1 = ceil_positive(base / (er * er * er));
    return out;
}

CompiledGate compile_local_gate(const std::shared_ptr<const Layout>& layout, const LogicalGate& gate,
                                const CompilationBudget& budget) {
    resolve(*layout, gate);
    if (!(budget.epsilon_total > 0.0)) throw std::invalid_argument("epsilon must be positive");
    CompiledGate out;
    out.info.target = describe(gate, layout->group());
    out.info.epsilon = budget.epsilon_total;
    if (gate.T == 0.0) {
        out.info.measured_error = 0.0;
        out.info.leakage = 0.0;
        out.info.met = true;
        return out;
    }

    std::uint64_t n1 = 0, n2 = 0;
    switch (budget.mode) {
        case BudgetMode::fixed:
            if (budget.n1 == 0 || budget.n2 == 0) throw std::invalid_argument("fixed mode needs N1, N2 >= 1");
            n1 = budget.n1;
            n2 = budget.n2;
            break;
        case BudgetMode::paper_bound: {
            auto pb = paper_bound_N(weight_ratio(*layout), layout->size(), budget.epsilon_total);
            const cpp_int limit = std::numeric_limits<std::uint64_t>::max();
            const cpp_int count = pb.n2 * (2 + 8 * pb.n1);
            if (pb.n1 > limit || pb.n2 > limit || count > cpp_int(budget.max_instructions)) {
                throw ResourceLimitError("paper bound needs N1 = " + pb.n1.str(6, std::ios::scientific) +
                                         ", N2 = " + pb.n2.str(6, std::ios::scientific) + ", i.e. " +
                                         count.str(6, std::ios::scientific) +
                                         " global gates, above the cap of " +
                                         std::to_string(budget.max_instructions));
            }
            n1 = static_cast<std::uint64_t>(pb.n1);
            n2 = static_cast<std::uint64_t>(pb.n2);
            break;
        }
        case BudgetMode::calibrated: {
            auto cal = calibrate_N(layout, gate, budget.epsilon_total, budget.caps, budget.run);
            n1 = cal.n1;
            n2 = cal.n2;
            out.info.measured_error = cal.measurement.error;
            out.info.leakage = cal.measurement.leakage;
            out.info.met = cal.met;
            break;
        }
    }
    out.sequence = nested_gate_sequence(layout, gate, n1, n2);
    if (out.sequence.instruction_count() > budget.max_instructions) {
        throw ResourceLimitError("compiled gate has " + std::to_string(out.sequence.instruction_count()) +
                                 " instructions, above the cap of " + std::to_string(budget.max_instructions));
    }
    if (budget.mode == BudgetMode::fixed) {
        auto m = measure_gate_error(layout, gate, n1, n2, budget.run);
        out.info.measured_error = m.error;
        out.info.leakage = m.leakage;
        out.info.met = m.error <= budget.epsilon_total;
    }
    out.info.n1 = n1;
    out.info.n2 = n2;
    out.info.predicted_bound = nested_predicted_bound(*layout, gate, n1, n2);
    return out;
}

std::vector<LogicalGate> split_circuit(const LogicalCircuit& circuit) {
    std::vector<LogicalGate> out;
    for (const auto& g : circuit.gates) {
        if (!std::isfinite(g.T)) throw std::invalid_argument("gate parameter must be finite");
        const double pieces = std::max(1.0, std::ceil(std::abs(g.T)));
        if (pieces > 1e6) throw ResourceLimitError("gate parameter too large to split");
        LogicalGate piece = g;
        piece.T = g.T / pieces;
        for (int i = 0; i < static_cast<int>(pieces); ++i) out.push_back(piece);
    }
    return out;
}

GlobalGateSequence compile_circuit(const LogicalCircuit& circuit, const CompilationBudget& budget) {
    if (!circuit.layout) throw std::invalid_argument("circuit has no layout");
    GlobalGateSequence out;
    out.metadata.mode = to_string(budget.mode);
    out.metadata.epsilon_total = budget.epsilon_total;
    out.metadata.predicted_bound = 0.0;
    const auto gates = split_circuit(circuit);
    if (gates.empty()) return out;

    CompilationBudget per_gate = budget;
    per_gate.epsilon_total = budget.epsilon_total / static_cast<double>(gates.size());
    std::map<std::tuple<int, int, double, GroupElement, GroupElement>, CompiledGate> memo;
    for (const auto& g : gates) {
        auto key = std::make_tuple(static_cast<int>(g.kind), g.delta, g.T, g.p, g.q);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, compile_local_gate(circuit.layout, g, per_gate)).first;
        out.append_sequence(it->second.sequence);
        out.metadata.gates.push_back(it->second.info);
        *out.metadata.predicted_bound += it->second.info.predicted_bound;
    }
    return out;
}

}  // namespace gqc
