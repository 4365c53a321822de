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

#include "gqc/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel_impl.hpp"

namespace gqc {

std::string to_bit_string(BasisIndex a, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
        if (a.test(i)) s[i] = '1';
    }
    return s;
}

BasisIndex from_bit_string(std::string_view bits) {
    if (bits.size() > 64) throw std::invalid_argument("bit string longer than 64 sites");
    BasisIndex a;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            a = a.with(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit strings may contain only 0 and 1");
        }
    }
    return a;
}

SiteSupport::SiteSupport(std::size_t n, BasisIndex mask) : n_(n), mask_(mask), position_(n, -1) {
    if (n > 64) throw std::invalid_argument("basis indexing supports at most 64 sites");
    for (std::size_t i = 0; i < n; ++i) {
        if (mask.test(i)) {
            position_[i] = static_cast<int>(active_.size());
            active_.push_back(i);
        }
    }
}

SiteSupport SiteSupport::full(std::size_t n) {
    return SiteSupport(n, BasisIndex{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1});
}

SiteSupport SiteSupport::of(std::size_t n, BasisIndex mask) {
    if (n < 64 && (mask.bits >> n) != 0) throw std::invalid_argument("support mask names sites outside D");
    return SiteSupport(n, mask);
}

std::uint64_t SiteSupport::compress(BasisIndex a) const {
    if (!contains(a)) throw std::invalid_argument("basis state has ones outside the support");
    if (is_full()) return a.bits;
    std::uint64_t c = 0;
    for (std::size_t j = 0; j < active_.size(); ++j) {
        if (a.test(active_[j])) c |= std::uint64_t{1} << j;
    }
    return c;
}

BasisIndex SiteSupport::expand(std::uint64_t compact) const {
    if (is_full()) return {compact};
    BasisIndex a;
    for (std::size_t j = 0; j < active_.size(); ++j) {
        if ((compact >> j) & 1u) a.bits |= std::uint64_t{1} << active_[j];
    }
    return a;
}

AdmissibleCode::AdmissibleCode(const Layout& layout) : n_(layout.size()) {
    if (n_ > 64) throw std::invalid_argument("basis indexing supports at most 64 sites");
    logical_ = layout.logical_indices();
    auto r = layout.reference_index();
    auto rp = layout.reference_prime_index();
    if (r == rp) throw std::invalid_argument("r and r' coincide");
    references_ = BasisIndex{}.with(r, true).with(rp, true);
    for (auto p : logical_) {
        if (references_.test(p)) throw std::invalid_argument("a reference site is also logical");
    }
}

std::size_t AdmissibleCode::logical_position(std::size_t site) const {
    auto it = std::find(logical_.begin(), logical_.end(), site);
    if (it == logical_.end()) throw std::invalid_argument("site is not logical");
    return static_cast<std::size_t>(it - logical_.begin());
}

BasisIndex AdmissibleCode::encode(std::uint64_t logical) const {
    if (logical_.size() < 64 && (logical >> logical_.size()) != 0) {
        throw std::invalid_argument("logical index has more bits than P has sites");
    }
    BasisIndex a = references_;
    for (std::size_t j = 0; j < logical_.size(); ++j) {
        if ((logical >> j) & 1u) a = a.with(logical_[j], true);
    }
    return a;
}

BasisIndex AdmissibleCode::encode(std::string_view bits) const {
    if (bits.size() != logical_.size()) {
        throw std::invalid_argument("expected " + std::to_string(logical_.size()) + " logical bits, got " +
                                    std::to_string(bits.size()));
    }
    std::uint64_t logical = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] == '1') {
            logical |= std::uint64_t{1} << j;
        } else if (bits[j] != '0') {
            throw std::invalid_argument("logical bit strings may contain only 0 and 1");
        }
    }
    return encode(logical);
}

std::optional<std::uint64_t> AdmissibleCode::decode(BasisIndex a) const {
    if ((a.bits & references_.bits) != references_.bits) return std::nullopt;
    std::uint64_t rest = a.bits & ~references_.bits;
    std::uint64_t logical = 0;
    for (std::size_t j = 0; j < logical_.size(); ++j) {
        if (a.test(logical_[j])) {
            logical |= std::uint64_t{1} << j;
            rest &= ~(std::uint64_t{1} << logical_[j]);
        }
    }
    if (rest != 0) return std::nullopt;
    return logical;
}

std::vector<BasisIndex> AdmissibleCode::admissible_indices() const {
    std::vector<BasisIndex> out;
    out.reserve(logical_dimension());
    for (std::uint64_t b = 0; b < logical_dimension(); ++b) out.push_back(encode(b));
    return out;
}

BasisIndex AdmissibleCode::support_mask() const { return encode((std::uint64_t{1} << logical_.size()) - 1); }

BasisIndex encode_logical(std::string_view bits, const Layout& layout) { return AdmissibleCode(layout).encode(bits); }

PureState::PureState(std::shared_ptr<const Layout> layout, SiteSupport support)
    : layout_(std::move(layout)), support_(std::move(support)) {
    if (!layout_) throw std::invalid_argument("PureState needs a layout");
    if (support_.site_count() != layout_->size()) throw std::invalid_argument("support does not match the layout");
    if (support_.active_count() > kMaxStateQubits) {
        throw ResourceLimitError("state over " + std::to_string(support_.active_count()) +
                                 " active sites exceeds the cap of " + std::to_string(kMaxStateQubits));
    }
    amps_.assign(support_.dimension(), cplx{0.0, 0.0});
}

PureState PureState::basis_state(std::shared_ptr<const Layout> layout, BasisIndex a) {
    auto n = layout->size();
    return basis_state(std::move(layout), a, SiteSupport::full(n));
}

PureState PureState::basis_state(std::shared_ptr<const Layout> layout, BasisIndex a, SiteSupport support) {
    PureState s(std::move(layout), std::move(support));
    s.set_amplitude(a, 1.0);
    return s;
}

cplx PureState::amplitude(BasisIndex a) const {
    if (!support_.contains(a)) return 0.0;
    return amps_[support_.compress(a)];
}

void PureState::set_amplitude(BasisIndex a, cplx value) { amps_[support_.compress(a)] = value; }

double PureState::squared_norm() const {
    return detail::chunked_sum<double>(amps_.size(), [&](std::size_t i) { return std::norm(amps_[i]); });
}

double PureState::norm() const { return std::sqrt(squared_norm()); }

void PureState::scale(cplx factor) {
    for (auto& x : amps_) x *= factor;
}

PureState PureState::widened(const SiteSupport& wider) const {
    if ((support_.mask().bits & ~wider.mask().bits) != 0) {
        throw std::invalid_argument("widened: target support does not contain the current one");
    }
    PureState out(layout_, wider);
    for (std::size_t c = 0; c < amps_.size(); ++c) {
        if (amps_[c] != cplx{}) out.set_amplitude(support_.expand(c), amps_[c]);
    }
    return out;
}

double max_abs_difference(const PureState& a, const PureState& b) {
    if (!(a.support() == b.support())) throw std::invalid_argument("states have different supports");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

cplx inner_product(const PureState& a, const PureState& b) {
    if (!(a.support() == b.support())) throw std::invalid_argument("states have different supports");
    return detail::chunked_sum<cplx>(a.data().size(),
                                     [&](std::size_t i) { return std::conj(a.data()[i]) * b.data()[i]; });
}

PureState prepare_initial(std::shared_ptr<const Layout> layout) {
    auto n = layout->size();
    return prepare_initial(std::move(layout), SiteSupport::full(n));
}

PureState prepare_initial(std::shared_ptr<const Layout> layout, SiteSupport support) {
    require_valid(*layout);
    AdmissibleCode code(*layout);
    return PureState::basis_state(std::move(layout), code.encode(std::uint64_t{0}), std::move(support));
}

PureState prepare_logical(std::shared_ptr<const Layout> layout, const Eigen::VectorXcd& logical,
                          std::optional<SiteSupport> support) {
    AdmissibleCode code(*layout);
    if (static_cast<std::size_t>(logical.size()) != code.logical_dimension()) {
        throw std::invalid_argument("logical vector has the wrong dimension");
    }
    auto n = layout->size();
    PureState s(std::move(layout), support ? *support : SiteSupport::full(n));
    for (std::size_t b = 0; b < code.logical_dimension(); ++b) {
        s.set_amplitude(code.encode(b), logical[static_cast<Eigen::Index>(b)]);
    }
    return s;
}

Projection project_admissible(const PureState& state) {
    AdmissibleCode code(state.layout());
    Projection out;
    out.logical = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(code.logical_dimension()));
    double inside = 0.0;
    for (std::size_t b = 0; b < code.logical_dimension(); ++b) {
        cplx v = state.amplitude(code.encode(b));
        out.logical[static_cast<Eigen::Index>(b)] = v;
        inside += std::norm(v);
    }
    const auto& amps = state.data();
    const auto& support = state.support();
    double outside = detail::chunked_sum<double>(amps.size(), [&](std::size_t c) {
        if (amps[c] == cplx{}) return 0.0;
        return code.is_admissible(support.expand(c)) ? 0.0 : std::norm(amps[c]);
    });
    (void)inside;
    out.leakage = std::sqrt(outside);
    return out;
}

Eigen::MatrixXcd restrict_operator(const StateOperator& op, std::shared_ptr<const Layout> layout,
                                   std::optional<SiteSupport> support) {
    AdmissibleCode code(*layout);
    if (code.logical_qubits() > 12) {
        throw ResourceLimitError("restrict_operator supports at most 12 logical qubits");
    }
    const auto dim = static_cast<Eigen::Index>(code.logical_dimension());
    SiteSupport sup = support ? *support : SiteSupport::full(layout->size());
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        PureState in = PureState::basis_state(layout, code.encode(static_cast<std::uint64_t>(col)), sup);
        PureState image = op(in);
        for (Eigen::Index row = 0; row < dim; ++row) {
            out(row, col) = image.amplitude(code.encode(static_cast<std::uint64_t>(row)));
        }
    }
    return out;
}

std::vector<StateDumpEntry> dump_state(const PureState& state, double amp_min) {
    const auto& support = state.support();
    std::vector<std::pair<BasisIndex, cplx>> hits;
    for (std::size_t c = 0; c < state.data().size(); ++c) {
        if (std::abs(state.data()[c]) > amp_min) hits.emplace_back(support.expand(c), state.data()[c]);
    }
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<StateDumpEntry> out;
    out.reserve(hits.size());
    for (const auto& [a, v] : hits) out.push_back({to_bit_string(a, state.layout().size()), v.real(), v.imag()});
    return out;
}

}  // namespace gqc
