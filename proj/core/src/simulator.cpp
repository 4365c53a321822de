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

#include "gqc/simulator.hpp"


#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gqc {

namespace {

void collect_instructions(const GlobalGateSequence& seq, std::set<const GlobalGateSequence*>& seen,
                          std::vector<const GateInstruction*>& out) {
    if (!seen.insert(&seq).second) return;
    for (const auto& item : seq.items()) {
        if (const auto* g = std::get_if<GateInstruction>(&item)) {
            out.push_back(g);
        } else {
            collect_instructions(*std::get<RepeatBlock>(item).body, seen, out);
        }
    }
}

}  // namespace

BasisIndex reachable_support(const Layout& layout, const GlobalGateSequence& sequence, BasisIndex start) {
    std::set<const GlobalGateSequence*> seen;
    std::vector<const GateInstruction*> instructions;
    collect_instructions(sequence, seen, instructions);

    const std::size_t n = layout.size();
    const BasisIndex all = SiteSupport::full(n).mask();
    std::uint64_t mask = start.bits;
    // Distinct (matrix, d) pairs only; sequences repeat a handful of generators.
    std::vector<std::pair<Matrix4, const std::vector<SitePair>*>> ops;
    std::map<GroupElement, std::vector<SitePair>> pairs_by_d;
    for (const auto* g : instructions) {
        if (const auto* one = std::get_if<OneQubitGate>(g)) {
            if (one->unitary(1, 0) != cplx{}) return all;
            continue;
        }
        const auto& two = std::get<TwoQubitGate>(*g);
        const auto d = layout.group().normalize(two.hamiltonian.d);
        bool known = false;
        auto it = pairs_by_d.find(d);
        if (it == pairs_by_d.end()) it = pairs_by_d.emplace(d, layout.pairs_at(d)).first;
        for (const auto& [m, prs] : ops) {
            if (m == two.hamiltonian.generator.matrix() && prs == &it->second) known = true;
        }
        if (!known) ops.emplace_back(two.hamiltonian.generator.matrix(), &it->second);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [m, prs] : ops) {
            for (const auto& pr : *prs) {
                if (pr.weight == 0.0) continue;
                const bool p_on = (mask >> pr.p) & 1u;
                const bool q_on = (mask >> pr.q) & 1u;
                for (int i = 0; i < 4; ++i) {
                    if ((!p_on && (i & 2)) || (!q_on && (i & 1))) continue;
                    for (int o = 0; o < 4; ++o) {
                        if (m(o, i) == cplx{}) continue;
                        if ((o & 2) && !((mask >> pr.p) & 1u)) {
                            mask |= std::uint64_t{1} << pr.p;
                            changed = true;
                        }
                        if ((o & 1) && !((mask >> pr.q) & 1u)) {
                            mask |= std::uint64_t{1} << pr.q;
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    return {mask};
}

SequenceRunner::SequenceRunner(std::shared_ptr<const Layout> layout, RunOptions options)
    : layout_(std::move(layout)), options_(options) {
    if (!layout_) throw std::invalid_argument("SequenceRunner needs a layout");
}

const GlobalOperator& SequenceRunner::operator_for(const GlobalHamiltonian& h) {
    const auto d = layout_->group().normalize(h.d);
    for (const auto& [m, dd, op] : operators_) {
        if (m == h.generator.matrix() && dd == d) return op;
    }
    operators_.emplace_back(h.generator.matrix(), d, GlobalOperator(layout_, h.generator.matrix(), d));
    return std::get<2>(operators_.back());
}

void SequenceRunner::apply_instruction(const GateInstruction& g, const SiteSupport& support, std::span<cplx> state) {
    if (const auto* two = std::get_if<TwoQubitGate>(&g)) {
        apply_exponential(operator_for(two->hamiltonian), two->duration, support, state, options_.tol);
    } else {
        apply_global_one_qubit(std::get<OneQubitGate>(g).unitary, support, state);
    }
}

void SequenceRunner::apply_to_columns(const GlobalGateSequence& seq, const SiteSupport& support,
                                      Eigen::MatrixXcd& m) {
    for (const auto& item : seq.items()) {
        if (const auto* g = std::get_if<GateInstruction>(&item)) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                apply_instruction(*g, support, std::span<cplx>(m.col(j).data(), static_cast<std::size_t>(m.rows())));
            }
        } else {
            const auto& rep = std::get<RepeatBlock>(item);
            m = (fused_power(rep, support) * m).eval();
        }
    }
}

const Eigen::MatrixXcd& SequenceRunner::fused_power(const RepeatBlock& rep, const SiteSupport& support) {
    auto key = std::make_tuple(rep.body.get(), rep.count, support.mask().bits);
    auto it = fused_.find(key);
    if (it != fused_.end()) return it->second.second;

    const auto dim = static_cast<Eigen::Index>(support.dimension());
    auto body_key = std::make_tuple(rep.body.get(), std::uint64_t{1}, support.mask().bits);
    auto bit = fused_.find(body_key);
    if (bit == fused_.end()) {
        Eigen::MatrixXcd body = Eigen::MatrixXcd::Identity(dim, dim);
        apply_to_columns(*rep.body, support, body);
        bit = fused_.emplace(body_key, std::make_pair(rep.body, std::move(body))).first;
    }
    if (rep.count == 1) return bit->second.second;

    // Binary powering, least significant bit first.
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd base = bit->second.second;
    std::uint64_t e = rep.count;
    bool first = true;
    while (e > 0) {
        if (e & 1u) {
            result = first ? base : (base * result).eval();
            first = false;
        }
        e >>= 1;
        if (e > 0) base = (base * base).eval();
    }
    return fused_.emplace(key, std::make_pair(rep.body, std::move(result))).first->second.second;
}

void SequenceRunner::run(const GlobalGateSequence& sequence, const SiteSupport& support, std::span<cplx> state) {
    const bool fuse = options_.fuse_repeats && support.active_count() <= options_.max_fused_qubits;
    double norm0 = 0.0;
    if (options_.check_unitarity) {
        for (const auto& x : state) norm0 += std::norm(x);
    }
    // Each exponential may be off by `tol`, so the squared norm may move by
    // about 2 tol per executed instruction on top of the fixed allowance.
    double executed = 0.0;
    auto check = [&] {
        if (!options_.check_unitarity) return;
        double nn = 0.0;
        for (const auto& x : state) nn += std::norm(x);
        const double allowed = (options_.norm_tol + 2.0 * options_.tol * executed) * std::max(1.0, norm0);
        if (std::abs(nn - norm0) > allowed) {
            std::ostringstream os;
            os << "norm drifted by " << std::abs(nn - norm0) << " (allowed " << allowed << ") while applying a sequence";
            throw std::runtime_error(os.str());
        }
    };
    for (const auto& item : sequence.items()) {
        if (const auto* g = std::get_if<GateInstruction>(&item)) {
            apply_instruction(*g, support, state);
            executed += 1.0;
        } else {
            const auto& rep = std::get<RepeatBlock>(item);
            executed += static_cast<double>(rep.count) * static_cast<double>(rep.body->instruction_count());
            if (fuse) {
                const auto& u = fused_power(rep, support);
                Eigen::Map<Eigen::VectorXcd> v(state.data(), static_cast<Eigen::Index>(state.size()));
                Eigen::VectorXcd w = u * v;
                v = w;
            } else {
                for (std::uint64_t i = 0; i < rep.count; ++i) run(*rep.body, support, state);
            }
        }
        check();
    }
}

PureState SequenceRunner::run(const GlobalGateSequence& sequence, PureState state) {
    if (state.layout().size() != layout_->size()) {
        throw std::invalid_argument("state and runner use different layouts");
    }
    run(sequence, state.support(), state.amplitudes());
    return state;
}

Eigen::MatrixXcd SequenceRunner::dense_unitary(const GlobalGateSequence& sequence, const SiteSupport& support) {
    if (support.active_count() > 12) throw ResourceLimitError("dense_unitary supports at most 12 active sites");
    const auto dim = static_cast<Eigen::Index>(support.dimension());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    apply_to_columns(sequence, support, m);
    return m;
}

BlockResult SequenceRunner::admissible_block(const GlobalGateSequence& sequence) {
    AdmissibleCode code(*layout_);
    SiteSupport support =
        SiteSupport::of(layout_->size(), reachable_support(*layout_, sequence, code.support_mask()));
    const auto dim = static_cast<Eigen::Index>(code.logical_dimension());
    BlockResult out{Eigen::MatrixXcd::Zero(dim, dim), 0.0, support};
    for (Eigen::Index col = 0; col < dim; ++col) {
        PureState s = PureState::basis_state(layout_, code.encode(static_cast<std::uint64_t>(col)), support);
        s = run(sequence, std::move(s));
        Projection pr = project_admissible(s);
        out.block.col(col) = pr.logical;
        out.leakage = std::max(out.leakage, pr.leakage);
    }
    return out;
}

}  // namespace gqc
