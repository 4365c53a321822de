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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gqc/common.hpp"
#include "gqc/lattice.hpp"

namespace gqc {

/// Largest number of active sites a dense PureState may carry.
inline constexpr std::size_t kMaxStateQubits = 24;

/// A computational basis state a: D -> {0,1}; bit i is a(D[i]).
struct BasisIndex {
    std::uint64_t bits = 0;

    bool test(std::size_t site) const { return (bits >> site) & 1u; }
    BasisIndex with(std::size_t site, bool value) const {
        return {value ? bits | (std::uint64_t{1} << site) : bits & ~(std::uint64_t{1} << site)};
    }
    auto operator<=>(const BasisIndex&) const = default;
};

/// Character i is the bit of site D[i].
std::string to_bit_string(BasisIndex a, std::size_t n);
BasisIndex from_bit_string(std::string_view bits);

/// Sites allowed to hold a 1. Basis states with a 1 elsewhere have zero
/// amplitude by construction, so a state over an s-site support stores 2^s
/// amplitudes indexed by the compressed bit pattern of its active sites.
class SiteSupport {
   public:
    static SiteSupport full(std::size_t n);
    static SiteSupport of(std::size_t n, BasisIndex mask);

    std::size_t site_count() const { return n_; }
    std::size_t active_count() const { return active_.size(); }
    std::size_t dimension() const { return std::size_t{1} << active_.size(); }
    bool is_full() const { return active_.size() == n_; }
    bool is_active(std::size_t site) const { return position_[site] >= 0; }
    /// Compressed bit position of an active site, -1 for inactive sites.
    int position(std::size_t site) const { return position_[site]; }
    const std::vector<std::size_t>& active_sites() const { return active_; }
    BasisIndex mask() const { return mask_; }

    bool contains(BasisIndex a) const { return (a.bits & ~mask_.bits) == 0; }
    std::uint64_t compress(BasisIndex a) const;
    BasisIndex expand(std::uint64_t compact) const;

    bool operator==(const SiteSupport& o) const { return n_ == o.n_ && mask_ == o.mask_; }

   private:
    SiteSupport(std::size_t n, BasisIndex mask);

    std::size_t n_;
    BasisIndex mask_;
    std::vector<std::size_t> active_;
    std::vector<int> position_;
};

/// The 2^k admissible basis states: ones at r and r', the logical bits on P
/// (bit j of the logical index sits on the j-th site of P), zeros elsewhere.
class AdmissibleCode {
   public:
    explicit AdmissibleCode(const Layout& layout);

    std::size_t logical_qubits() const { return logical_.size(); }
    std::size_t logical_dimension() const { return std::size_t{1} << logical_.size(); }
    /// D-indices of P in logical-bit order.
    const std::vector<std::size_t>& logical_sites() const { return logical_; }
    std::size_t logical_position(std::size_t site) const;

    BasisIndex encode(std::uint64_t logical) const;
    /// Character j of `bits` is logical bit j.
    BasisIndex encode(std::string_view bits) const;
    std::optional<std::uint64_t> decode(BasisIndex a) const;
    bool is_admissible(BasisIndex a) const { return decode(a).has_value(); }
    std::vector<BasisIndex> admissible_indices() const;
    /// P ∪ {r, r'}.
    BasisIndex support_mask() const;

   private:
    std::size_t n_;
    std::vector<std::size_t> logical_;
    BasisIndex references_;
};

BasisIndex encode_logical(std::string_view bits, const Layout& layout);

class PureState {
   public:
    PureState(std::shared_ptr<const Layout> layout, SiteSupport support);

    static PureState basis_state(std::shared_ptr<const Layout> layout, BasisIndex a);
    static PureState basis_state(std::shared_ptr<const Layout> layout, BasisIndex a, SiteSupport support);

    const Layout& layout() const { return *layout_; }
    const std::shared_ptr<const Layout>& layout_ptr() const { return layout_; }
    const SiteSupport& support() const { return support_; }

    /// Amplitudes indexed by compressed basis index.
    std::span<cplx> amplitudes() { return amps_; }
    std::span<const cplx> amplitudes() const { return amps_; }
    std::vector<cplx>& data() { return amps_; }
    const std::vector<cplx>& data() const { return amps_; }

    cplx amplitude(BasisIndex a) const;
    void set_amplitude(BasisIndex a, cplx value);

    double squared_norm() const;
    double norm() const;
    void scale(cplx factor);
    /// The same vector over a larger support.
    PureState widened(const SiteSupport& wider) const;
    /// A zero state sharing layout and support.
    PureState zeros_like() const { return PureState(layout_, support_); }

   private:
    std::shared_ptr<const Layout> layout_;
    SiteSupport support_;
    std::vector<cplx> amps_;
};

/// Maximum deviation |a_i - b_i| over two states with the same support.
double max_abs_difference(const PureState& a, const PureState& b);
/// <a|b>, reduced in a fixed order.
cplx inner_product(const PureState& a, const PureState& b);

/// The encoded all-zeros logical state.
PureState prepare_initial(std::shared_ptr<const Layout> layout);
PureState prepare_initial(std::shared_ptr<const Layout> layout, SiteSupport support);

/// Sum_b logical[b] |encode(b)>.
PureState prepare_logical(std::shared_ptr<const Layout> layout, const Eigen::VectorXcd& logical,
                          std::optional<SiteSupport> support = std::nullopt);

struct Projection {
    Eigen::VectorXcd logical;
    double leakage = 0.0;  // norm of the part outside the admissible subspace
};

Projection project_admissible(const PureState& state);

using StateOperator = std::function<PureState(const PureState&)>;

/// Entry (b, b') = <encode(b)| op |encode(b')>, assembled column by column.
/// The inputs are basis states over `support` (full by default).
Eigen::MatrixXcd restrict_operator(const StateOperator& op, std::shared_ptr<const Layout> layout,
                                   std::optional<SiteSupport> support = std::nullopt);

struct StateDumpEntry {
    std::string bits;
    double re;
    double im;
};

/// Amplitudes with modulus above `amp_min`, ascending by basis index.
std::vector<StateDumpEntry> dump_state(const PureState& state, double amp_min = 1e-12);

}  // namespace gqc
