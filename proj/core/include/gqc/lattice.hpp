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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gqc {

/// An element of the ambient abelian group: one residue for cyclic groups,
/// one integer per axis for grids.
using GroupElement = std::vector<std::int64_t>;

/// The ambient group G. Cyclic groups wrap mod n; grids live in Z^l with the
/// box {0..m-1}^l as their default site set, and differences are never wrapped.
class GroupSpec {
   public:
    enum class Kind { cyclic, grid };

    static GroupSpec cyclic(std::int64_t n);
    static GroupSpec grid(int dims, std::int64_t side);

    Kind kind() const { return kind_; }
    bool is_cyclic() const { return kind_ == Kind::cyclic; }
    /// Cyclic order n (cyclic groups only).
    std::int64_t order() const { return order_; }
    /// Number of coordinates of an element (1 for cyclic groups).
    int rank() const { return dims_; }
    /// Side length m of the default box (grids only).
    std::int64_t side() const { return side_; }

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement subtract(const GroupElement& a, const GroupElement& b) const;
    GroupElement zero() const { return GroupElement(static_cast<std::size_t>(dims_), 0); }
    bool is_zero(const GroupElement& a) const;

    /// Throws std::invalid_argument unless `a` has the right rank (and, for
    /// cyclic groups, is a reduced residue).
    void check_element(const GroupElement& a) const;
    /// Reduces residues mod n for cyclic groups; identity for grids.
    GroupElement normalize(GroupElement a) const;

    /// The full circle (ascending residues) or the full box (row-major, last
    /// coordinate fastest).
    std::vector<GroupElement> default_sites() const;

    std::string format(const GroupElement& a) const;

    bool operator==(const GroupSpec&) const = default;

   private:
    GroupSpec(Kind kind, int dims, std::int64_t order, std::int64_t side)
        : kind_(kind), dims_(dims), order_(order), side_(side) {}

    Kind kind_;
    int dims_;
    std::int64_t order_;
    std::int64_t side_;
};

/// An ordered pair of site indices (p, q) into D with its weight W(p, q).
struct SitePair {
    std::size_t p;
    std::size_t q;
    double weight;
};

struct WeightEntry {
    GroupElement p;
    GroupElement q;
    double value;
};

/// The geometric stage: site set D, logical sites P, references r and r',
/// and the weight table W on ordered pairs of D.
///
/// A Layout may describe geometry that violates the encoding constraints;
/// validate_layout() reports those. Only malformed group data (wrong rank,
/// unreduced residues, repeated sites in D, weights on sites outside D) is
/// rejected at construction.
class Layout {
   public:
    Layout(GroupSpec group, std::vector<GroupElement> sites, std::vector<GroupElement> logical, GroupElement r,
           GroupElement r_prime, const std::vector<WeightEntry>& weight_overrides = {});

    const GroupSpec& group() const { return group_; }
    std::size_t size() const { return sites_.size(); }
    const std::vector<GroupElement>& sites() const { return sites_; }
    const GroupElement& site(std::size_t i) const { return sites_.at(i); }

    /// P, sorted by position in D (elements outside D, if any, come last).
    const std::vector<GroupElement>& logical_sites() const { return logical_; }
    std::size_t logical_count() const { return logical_.size(); }
    const GroupElement& reference() const { return r_; }
    const GroupElement& reference_prime() const { return r_prime_; }

    std::optional<std::size_t> index_of(const GroupElement& a) const;
    /// Index in D; throws std::invalid_argument when `a` is not a site.
    std::size_t require_index(const GroupElement& a) const;
    std::vector<std::size_t> logical_indices() const;
    std::size_t reference_index() const { return require_index(r_); }
    std::size_t reference_prime_index() const { return require_index(r_prime_); }

    double weight(std::size_t p, std::size_t q) const { return weights_[p * sites_.size() + q]; }
    /// W(l, l'), zero whenever either element lies outside D.
    double weight(const GroupElement& p, const GroupElement& q) const;
    bool has_uniform_weights() const;

    /// All ordered pairs (p, q) of D with p - q = d, ascending in p.
    std::vector<SitePair> pairs_at(const GroupElement& d) const;

    /// A copy with W replaced by `w(p, q)` for every ordered pair p != q.
    Layout with_weights(const std::function<double(std::size_t, std::size_t)>& w) const;

   private:
    GroupSpec group_;
    std::vector<GroupElement> sites_;
    std::vector<GroupElement> logical_;
    GroupElement r_;
    GroupElement r_prime_;
    std::map<GroupElement, std::size_t> index_;
    std::vector<double> weights_;
};

enum class ConstraintId { basic, one, two, three };

std::string to_string(ConstraintId id);

struct Violation {
    ConstraintId constraint;
    std::vector<GroupElement> witness;
    std::string message;
};

struct ConstraintReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Checks the basic invariants and the three difference-set constraints by
/// exhaustive enumeration over P ∪ {r, r'}. Never throws on bad geometry.
ConstraintReport validate_layout(const Layout& layout);

/// Throws std::invalid_argument listing the violations unless the layout is valid.
void require_valid(const Layout& layout);

enum class LayoutFamily { grid_sixth, circle_sixth, grid_slab };

std::string to_string(LayoutFamily family);
LayoutFamily layout_family_from_string(const std::string& name);

struct FamilyParams {
    std::int64_t n = 0;  // circle size
    int l = 0;           // grid dimension count
    std::int64_t m = 0;  // grid side length
};

/// The three stock layouts, with uniform W. Throws std::invalid_argument on
/// parameter mismatch (n not a positive multiple of 6, m not 1 mod 3, ...).
Layout builtin_layout(LayoutFamily family, const FamilyParams& params);
Layout circle_sixth(std::int64_t n);
Layout grid_sixth(int l, std::int64_t m);
Layout grid_slab(int l, std::int64_t m);

/// Closed forms for |P|: |D|/6 - 1 for the sixth families when
/// 6 divides |D|, and j*m^(l-1) with m = 3j + 1 for the slab family.
std::optional<std::size_t> expected_logical_count(LayoutFamily family, const FamilyParams& params);

/// max |W| over all ordered pairs of D divided by min |W| over ordered pairs
/// of P ∪ {r, r'}. Throws std::invalid_argument naming the pair when a weight
/// inside P ∪ {r, r'} is zero.
double weight_ratio(const Layout& layout);

/// Group distance used by the stock non-uniform weight table: cyclic distance
/// for circles, L1 distance for grids.
std::int64_t site_distance(const Layout& layout, std::size_t p, std::size_t q);

/// W(p, q) = 1 / (1 + dist(p, q)).
Layout with_distance_decay(const Layout& layout);

}  // namespace gqc
