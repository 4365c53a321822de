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

#include "gqc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gqc {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

GroupSpec GroupSpec::cyclic(std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("cyclic group order must be >= 1, got " + std::to_string(n));
    }
    return GroupSpec(Kind::cyclic, 1, n, 0);
}

GroupSpec GroupSpec::grid(int dims, std::int64_t side) {
    if (dims < 1) {
        throw std::invalid_argument("grid dimension count must be >= 1, got " + std::to_string(dims));
    }
    if (side < 1) {
        throw std::invalid_argument("grid side length must be >= 1, got " + std::to_string(side));
    }
    return GroupSpec(Kind::grid, dims, 0, side);
}

GroupElement GroupSpec::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return normalize(std::move(out));
}

GroupElement GroupSpec::subtract(const GroupElement& a, const GroupElement& b) const {
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return normalize(std::move(out));
}

bool GroupSpec::is_zero(const GroupElement& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
}

void GroupSpec::check_element(const GroupElement& a) const {
    if (a.size() != static_cast<std::size_t>(dims_)) {
        throw std::invalid_argument("group element " + format(a) + " has " + std::to_string(a.size()) +
                                    " coordinates, expected " + std::to_string(dims_));
    }
    if (kind_ == Kind::cyclic && (a[0] < 0 || a[0] >= order_)) {
        throw std::invalid_argument("residue " + std::to_string(a[0]) + " out of range for Z_" +
                                    std::to_string(order_));
    }
}

GroupElement GroupSpec::normalize(GroupElement a) const {
    if (kind_ == Kind::cyclic) {
        for (auto& x : a) {
            x = mod(x, order_);
        }
    }
    return a;
}

std::vector<GroupElement> GroupSpec::default_sites() const {
    std::vector<GroupElement> out;
    if (kind_ == Kind::cyclic) {
        out.reserve(static_cast<std::size_t>(order_));
        for (std::int64_t i = 0; i < order_; ++i) {
            out.push_back({i});
        }
        return out;
    }
    GroupElement cur(static_cast<std::size_t>(dims_), 0);
    while (true) {
        out.push_back(cur);
        int axis = dims_ - 1;
        while (axis >= 0 && ++cur[static_cast<std::size_t>(axis)] == side_) {
            cur[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) {
            break;
        }
    }
    return out;
}

std::string GroupSpec::format(const GroupElement& a) const {
    if (a.size() == 1 && kind_ == Kind::cyclic) {
        return std::to_string(a[0]);
    }
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

Layout::Layout(GroupSpec group, std::vector<GroupElement> sites, std::vector<GroupElement> logical, GroupElement r,
               GroupElement r_prime, const std::vector<WeightEntry>& weight_overrides)
    : group_(group), sites_(std::move(sites)), r_(std::move(r)), r_prime_(std::move(r_prime)) {
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        group_.check_element(sites_[i]);
        if (!index_.emplace(sites_[i], i).second) {
            throw std::invalid_argument("site " + group_.format(sites_[i]) + " listed twice in D");
        }
    }
    group_.check_element(r_);
    group_.check_element(r_prime_);
    for (const auto& p : logical) {
        group_.check_element(p);
    }
    if (sites_.size() > 4096) {
        throw std::invalid_argument("site sets above 4096 sites are not supported");
    }

    logical_ = std::move(logical);
    std::stable_sort(logical_.begin(), logical_.end(), [this](const GroupElement& a, const GroupElement& b) {
        auto ia = index_of(a);
        auto ib = index_of(b);
        std::size_t ka = ia ? *ia : std::numeric_limits<std::size_t>::max();
        std::size_t kb = ib ? *ib : std::numeric_limits<std::size_t>::max();
        if (ka != kb) return ka < kb;
        return a < b;
    });

    const std::size_t n = sites_.size();
    weights_.assign(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        weights_[i * n + i] = 0.0;
    }
    for (const auto& e : weight_overrides) {
        group_.check_element(e.p);
        group_.check_element(e.q);
        auto ip = index_of(e.p);
        auto iq = index_of(e.q);
        if (!ip || !iq) {
            throw std::invalid_argument("weight entry (" + group_.format(e.p) + ", " + group_.format(e.q) +
                                        ") references a site outside D");
        }
        if (*ip == *iq) {
            throw std::invalid_argument("weight entry on the diagonal pair (" + group_.format(e.p) + ", " +
                                        group_.format(e.q) + ")");
        }
        if (!std::isfinite(e.value)) {
            throw std::invalid_argument("non-finite weight");
        }
        weights_[*ip * n + *iq] = e.value;
    }
}

std::optional<std::size_t> Layout::index_of(const GroupElement& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Layout::require_index(const GroupElement& a) const {
    auto i = index_of(a);
    if (!i) {
        throw std::invalid_argument("element " + group_.format(a) + " is not a site of D");
    }
    return *i;
}

std::vector<std::size_t> Layout::logical_indices() const {
    std::vector<std::size_t> out;
    out.reserve(logical_.size());
    for (const auto& p : logical_) {
        out.push_back(require_index(p));
    }
    return out;
}

double Layout::weight(const GroupElement& p, const GroupElement& q) const {
    auto ip = index_of(p);
    auto iq = index_of(q);
    if (!ip || !iq) return 0.0;
    return weight(*ip, *iq);
}

bool Layout::has_uniform_weights() const {
    const std::size_t n = sites_.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p != q && weights_[p * n + q] != 1.0) return false;
        }
    }
    return true;
}

std::vector<SitePair> Layout::pairs_at(const GroupElement& d) const {
    group_.check_element(group_.normalize(d));
    std::vector<SitePair> out;
    for (std::size_t q = 0; q < sites_.size(); ++q) {
        auto p = index_of(group_.add(sites_[q], d));
        if (p && *p != q) {
            out.push_back({*p, q, weight(*p, q)});
        }
    }
    std::sort(out.begin(), out.end(), [](const SitePair& a, const SitePair& b) {
        return a.p != b.p ? a.p < b.p : a.q < b.q;
    });
    return out;
}

Layout Layout::with_weights(const std::function<double(std::size_t, std::size_t)>& w) const {
    Layout out = *this;
    const std::size_t n = sites_.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            double v = w(p, q);
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite weight");
            out.weights_[p * n + q] = v;
        }
    }
    return out;
}

std::string to_string(ConstraintId id) {
    switch (id) {
        case ConstraintId::basic:
            return "basic";
        case ConstraintId::one:
            return "1";
        case ConstraintId::two:
            return "2";
        case ConstraintId::three:
            return "3";
    }
    return "?";
}

ConstraintReport validate_layout(const Layout& layout) {
    const GroupSpec& g = layout.group();
    ConstraintReport report;
    auto add = [&](ConstraintId id, std::vector<GroupElement> witness, std::string msg) {
        report.violations.push_back({id, std::move(witness), std::move(msg)});
    };
    const auto& r = layout.reference();
    const auto& rp = layout.reference_prime();
    const auto& P = layout.logical_sites();

    if (r == rp) {
        add(ConstraintId::basic, {r}, "r and r' coincide");
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (P[i] == r || P[i] == rp) {
            add(ConstraintId::basic, {P[i]}, "reference site " + g.format(P[i]) + " is also in P");
        }
        if (i > 0 && P[i] == P[i - 1]) {
            add(ConstraintId::basic, {P[i]}, "site " + g.format(P[i]) + " listed twice in P");
        }
    }

    // S = P ∪ {r, r'} without repeats, in a fixed order.
    std::vector<GroupElement> S;
    for (const auto& x : P) {
        if (std::find(S.begin(), S.end(), x) == S.end()) S.push_back(x);
    }
    for (const auto& x : {r, rp}) {
        if (std::find(S.begin(), S.end(), x) == S.end()) S.push_back(x);
    }
    for (const auto& x : S) {
        if (!layout.index_of(x)) {
            add(ConstraintId::basic, {x}, "site " + g.format(x) + " is not in D");
        }
    }
    for (const auto& a : S) {
        for (const auto& b : S) {
            if (a != b && layout.index_of(a) && layout.index_of(b) && layout.weight(a, b) == 0.0) {
                add(ConstraintId::basic, {a, b},
                    "W(" + g.format(a) + ", " + g.format(b) + ") is zero inside P ∪ {r, r'}");
            }
        }
    }

    // Ordered pairs of S realizing difference d (q == q' included; d = 0 then).
    auto realizations = [&](const GroupElement& d) {
        std::vector<std::pair<GroupElement, GroupElement>> hits;
        for (const auto& a : S) {
            for (const auto& b : S) {
                if (g.subtract(a, b) == d) hits.emplace_back(a, b);
            }
        }
        return hits;
    };

    for (const auto& p : P) {
        for (const auto* s : {&r, &rp}) {
            if (p == *s) continue;
            auto hits = realizations(g.subtract(p, *s));
            if (hits.size() != 1) {
                for (const auto& [a, b] : hits) {
                    if (a == p && b == *s) continue;
                    add(ConstraintId::one, {p, *s, a, b},
                        g.format(p) + " - " + g.format(*s) + " is also realized by " + g.format(a) + " - " +
                            g.format(b));
                }
            }
        }
    }
    if (r != rp) {
        auto hits = realizations(g.subtract(r, rp));
        for (const auto& [a, b] : hits) {
            if (a == r && b == rp) continue;
            add(ConstraintId::two, {r, rp, a, b}, "r - r' is also realized by " + g.format(a) + " - " + g.format(b));
        }
    }
    for (const auto& p : P) {
        auto target = g.add(g.subtract(p, r), g.subtract(p, rp));
        for (const auto& [a, b] : realizations(target)) {
            add(ConstraintId::three, {p, a, b},
                "(p - r) + (p - r') for p = " + g.format(p) + " equals " + g.format(a) + " - " + g.format(b));
        }
    }
    return report;
}

void require_valid(const Layout& layout) {
    auto report = validate_layout(layout);
    if (report.valid()) return;
    std::string msg = "layout violates its constraints:";
    for (const auto& v : report.violations) {
        msg += " [" + to_string(v.constraint) + "] " + v.message + ";";
    }
    throw std::invalid_argument(msg);
}

std::string to_string(LayoutFamily family) {
    switch (family) {
        case LayoutFamily::grid_sixth:
            return "grid_sixth";
        case LayoutFamily::circle_sixth:
            return "circle_sixth";
        case LayoutFamily::grid_slab:
            return "grid_slab";
    }
    return "?";
}

LayoutFamily layout_family_from_string(const std::string& name) {
    if (name == "grid_sixth") return LayoutFamily::grid_sixth;
    if (name == "circle_sixth") return LayoutFamily::circle_sixth;
    if (name == "grid_slab") return LayoutFamily::grid_slab;
    throw std::invalid_argument("unknown layout family '" + name + "'");
}

Layout circle_sixth(std::int64_t n) {
    if (n < 6 || n % 6 != 0) {
        throw std::invalid_argument("circle_sixth needs n a positive multiple of 6, got " + std::to_string(n));
    }
    auto g = GroupSpec::cyclic(n);
    std::vector<GroupElement> P;
    for (std::int64_t p = 6; p < n; p += 6) {
        P.push_back({p});
    }
    return Layout(g, g.default_sites(), std::move(P), {1}, {2});
}

Layout grid_sixth(int l, std::int64_t m) {
    if (l < 1) {
        throw std::invalid_argument("grid_sixth needs l >= 1");
    }
    if (m < 3) {
        throw std::invalid_argument("grid_sixth needs m >= 3 so that r' = (2,0,...,0) lies in the box, got m = " +
                                    std::to_string(m));
    }
    auto g = GroupSpec::grid(l, m);
    auto D = g.default_sites();
    std::vector<GroupElement> P;
    for (const auto& p : D) {
        std::int64_t sum = 0;
        for (auto x : p) sum += x;
        if (sum % 6 == 0 && !g.is_zero(p)) P.push_back(p);
    }
    GroupElement r = g.zero(), rp = g.zero();
    r[0] = 1;
    rp[0] = 2;
    return Layout(g, std::move(D), std::move(P), r, rp);
}

Layout grid_slab(int l, std::int64_t m) {
    if (l < 1) {
        throw std::invalid_argument("grid_slab needs l >= 1");
    }
    if (m < 4 || m % 3 != 1) {
        throw std::invalid_argument("grid_slab needs m = 3j + 1 with j >= 1, got m = " + std::to_string(m));
    }
    const std::int64_t j = (m - 1) / 3;
    auto g = GroupSpec::grid(l, m);
    auto D = g.default_sites();
    std::vector<GroupElement> P;
    for (const auto& p : D) {
        if (p[0] >= 2 * j + 1 && p[0] <= 3 * j) P.push_back(p);
    }
    GroupElement r = g.zero(), rp = g.zero();
    rp[0] = j;
    return Layout(g, std::move(D), std::move(P), r, rp);
}

Layout builtin_layout(LayoutFamily family, const FamilyParams& params) {
    switch (family) {
        case LayoutFamily::circle_sixth:
            return circle_sixth(params.n);
        case LayoutFamily::grid_sixth:
            return grid_sixth(params.l, params.m);
        case LayoutFamily::grid_slab:
            return grid_slab(params.l, params.m);
    }
    throw std::invalid_argument("unknown layout family");
}

std::optional<std::size_t> expected_logical_count(LayoutFamily family, const FamilyParams& params) {
    auto ipow = [](std::int64_t b, int e) {
        std::int64_t v = 1;
        for (int i = 0; i < e; ++i) v *= b;
        return v;
    };
    switch (family) {
        case LayoutFamily::circle_sixth:
            return static_cast<std::size_t>(params.n / 6 - 1);
        case LayoutFamily::grid_sixth: {
            std::int64_t size = ipow(params.m, params.l);
            if (size % 6 != 0) return std::nullopt;
            return static_cast<std::size_t>(size / 6 - 1);
        }
        case LayoutFamily::grid_slab:
            return static_cast<std::size_t>((params.m - 1) / 3 * ipow(params.m, params.l - 1));
    }
    return std::nullopt;
}

double weight_ratio(const Layout& layout) {
    const std::size_t n = layout.size();
    double hi = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p != q) hi = std::max(hi, std::abs(layout.weight(p, q)));
        }
    }
    std::vector<std::size_t> S = layout.logical_indices();
    S.push_back(layout.reference_index());
    S.push_back(layout.reference_prime_index());
    double lo = std::numeric_limits<double>::infinity();
    for (auto a : S) {
        for (auto b : S) {
            if (a == b) continue;
            double w = std::abs(layout.weight(a, b));
            if (w == 0.0) {
                throw std::invalid_argument("weight_ratio: W(" + layout.group().format(layout.site(a)) + ", " +
                                            layout.group().format(layout.site(b)) + ") is zero");
            }
            lo = std::min(lo, w);
        }
    }
    return hi / lo;
}

std::int64_t site_distance(const Layout& layout, std::size_t p, std::size_t q) {
    const auto& g = layout.group();
    auto d = g.subtract(layout.site(p), layout.site(q));
    if (g.is_cyclic()) {
        return std::min(d[0], g.order() - d[0]);
    }
    std::int64_t s = 0;
    for (auto x : d) s += x < 0 ? -x : x;
    return s;
}

Layout with_distance_decay(const Layout& layout) {
    return layout.with_weights([&](std::size_t p, std::size_t q) {
        return 1.0 / (1.0 + static_cast<double>(site_distance(layout, p, q)));
    });
}

}  // namespace gqc
