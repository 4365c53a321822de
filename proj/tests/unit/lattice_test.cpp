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
#include <numeric>

#include "gqc/common.hpp"
#include "gqc/lattice.hpp"
#include "gqc/layout_io.hpp"

using namespace gqc;

namespace {

Layout cyclic_layout(std::int64_t n, std::vector<std::int64_t> p, std::int64_t r, std::int64_t rp) {
    auto g = GroupSpec::cyclic(n);
    std::vector<GroupElement> logical;
    for (auto x : p) logical.push_back({x});
    return Layout(g, g.default_sites(), logical, {r}, {rp});
}

bool has_violation(const ConstraintReport& rep, ConstraintId id) {
    return std::any_of(rep.violations.begin(), rep.violations.end(),
                       [&](const Violation& v) { return v.constraint == id; });
}

// Enumerates every point of {0..m-1}^l.
std::vector<GroupElement> box(int l, std::int64_t m) {
    std::vector<GroupElement> out;
    GroupElement x(static_cast<std::size_t>(l), 0);
    while (true) {
        out.push_back(x);
        int i = l - 1;
        while (i >= 0 && ++x[static_cast<std::size_t>(i)] == m) x[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return out;
}

}  // namespace

TEST(Lattice, CircleTwelveStock) {
    Layout c = circle_sixth(12);
    ASSERT_EQ(c.logical_sites().size(), 1u);
    EXPECT_EQ(c.logical_sites()[0], GroupElement{6});
    EXPECT_EQ(c.reference(), GroupElement{1});
    EXPECT_EQ(c.reference_prime(), GroupElement{2});
    EXPECT_TRUE(validate_layout(c).valid());
}

TEST(Lattice, CircleEighteenTwoLogical) {
    Layout c = circle_sixth(18);
    EXPECT_EQ(c.logical_sites(), (std::vector<GroupElement>{{6}, {12}}));
    EXPECT_TRUE(validate_layout(c).valid());
}

TEST(Lattice, ReferenceDifferenceRepeated) {
    // {1, 2, 3}: 2 - 3 = 1 - 2 = 11 mod 12.
    auto rep = validate_layout(cyclic_layout(12, {3}, 1, 2));
    EXPECT_FALSE(rep.valid());
    EXPECT_TRUE(has_violation(rep, ConstraintId::two));
}

TEST(Lattice, ReferenceInsideLogicalSetIsRejected) {
    auto rep = validate_layout(cyclic_layout(18, {6, 12}, 1, 6));
    EXPECT_FALSE(rep.valid());
}

TEST(Lattice, StockFamiliesUpTo36Sites) {
    for (std::int64_t n = 6; n <= 36; n += 6) {
        Layout c = circle_sixth(n);
        EXPECT_TRUE(validate_layout(c).valid()) << n;
        EXPECT_EQ(c.logical_count(), static_cast<std::size_t>(n / 6 - 1));
    }
    for (int l = 1; l <= 3; ++l) {
        for (std::int64_t m = 3; std::pow(m, l) <= 36; ++m) {
            const auto sites = box(l, m);
            Layout g = grid_sixth(l, m);
            EXPECT_TRUE(validate_layout(g).valid()) << l << " " << m;
            // Brute-force membership count.
            std::size_t count = 0;
            for (const auto& x : sites) {
                const auto s = std::accumulate(x.begin(), x.end(), std::int64_t{0});
                if (s % 6 == 0 && s != 0) ++count;
            }
            EXPECT_EQ(g.logical_count(), count);
            auto closed = expected_logical_count(LayoutFamily::grid_sixth, {0, l, m});
            if (sites.size() % 6 == 0 && m % 6 == 0) {
                ASSERT_TRUE(closed.has_value());
                EXPECT_EQ(*closed, sites.size() / 6 - 1);
                EXPECT_EQ(*closed, count);
            }
            if (m % 3 == 1 && m >= 4) {
                const std::int64_t j = (m - 1) / 3;
                Layout s = grid_slab(l, m);
                EXPECT_TRUE(validate_layout(s).valid()) << l << " " << m;
                std::size_t slab = 0;
                for (const auto& x : sites) slab += (x[0] >= 2 * j + 1 && x[0] <= 3 * j) ? 1 : 0;
                EXPECT_EQ(s.logical_count(), slab);
                EXPECT_EQ(s.logical_count(), static_cast<std::size_t>(j * std::pow(m, l - 1)));
            }
        }
    }
}

TEST(Lattice, DegenerateGridHasNoLogicalSites) {
    Layout g = grid_sixth(1, 6);
    EXPECT_TRUE(g.logical_sites().empty());
    EXPECT_TRUE(validate_layout(g).valid());
}

TEST(Lattice, SmallestSlab) {
    Layout s = grid_slab(1, 4);
    EXPECT_EQ(s.logical_sites(), (std::vector<GroupElement>{{3}}));
    EXPECT_EQ(s.reference(), GroupElement{0});
    EXPECT_EQ(s.reference_prime(), GroupElement{1});
}

TEST(Lattice, BadFamilyParameters) {
    EXPECT_THROW(circle_sixth(13), std::invalid_argument);
    EXPECT_THROW(grid_slab(1, 5), std::invalid_argument);
    EXPECT_THROW(layout_family_from_string("hexagon"), std::invalid_argument);
}

TEST(Lattice, GridDifferencesDoNotWrap) {
    auto g = GroupSpec::grid(1, 7);
    Layout grid(g, g.default_sites(), {}, {0}, {1});
    EXPECT_EQ(grid.pairs_at({6}).size(), 1u);
    EXPECT_EQ(grid.pairs_at({1}).size(), 6u);
    Layout ring = cyclic_layout(7, {}, 0, 1);
    EXPECT_EQ(ring.pairs_at({1}).size(), 7u);
    EXPECT_EQ(ring.pairs_at({6}).size(), 7u);
}

TEST(Lattice, WeightRatio) {
    Layout c = circle_sixth(12);
    EXPECT_DOUBLE_EQ(weight_ratio(c), 1.0);
    // Sites 3 and 4 lie outside P ∪ {r, r'}.
    auto g = c.group();
    Layout heavy(g, g.default_sites(), c.logical_sites(), c.reference(), c.reference_prime(), {{{3}, {4}, 2.0}});
    EXPECT_DOUBLE_EQ(weight_ratio(heavy), 2.0);
    Layout zero(g, g.default_sites(), c.logical_sites(), c.reference(), c.reference_prime(), {{{6}, {1}, 0.0}});
    EXPECT_THROW(weight_ratio(zero), std::invalid_argument);
}

TEST(Lattice, DistanceDecayRatio) {
    Layout c = with_distance_decay(circle_sixth(12));
    // Brute force: max over D, min over {1, 2, 6}.
    double mx = 0.0, mn = 1e300;
    const std::vector<std::int64_t> core{1, 2, 6};
    for (std::int64_t a = 0; a < 12; ++a)
        for (std::int64_t b = 0; b < 12; ++b) {
            if (a == b) continue;
            const std::int64_t d = std::min((a - b + 12) % 12, (b - a + 12) % 12);
            const double w = 1.0 / (1.0 + static_cast<double>(d));
            mx = std::max(mx, w);
            if (std::count(core.begin(), core.end(), a) && std::count(core.begin(), core.end(), b)) mn = std::min(mn, w);
        }
    EXPECT_NEAR(weight_ratio(c), mx / mn, 1e-15);
    EXPECT_NEAR(weight_ratio(c), 3.0, 1e-15);
}

TEST(LayoutIo, RoundTrip) {
    Layout c = with_distance_decay(circle_sixth(18));
    Layout back = parse_layout(layout_to_json(c));
    EXPECT_EQ(layout_to_json(back), layout_to_json(c));
    ASSERT_EQ(back.size(), c.size());
    for (std::size_t p = 0; p < c.size(); ++p)
        for (std::size_t q = 0; q < c.size(); ++q)
            if (p != q) EXPECT_EQ(back.weight(p, q), c.weight(p, q));
}

TEST(LayoutIo, FamilyForm) {
    Layout s = parse_layout(R"({"group": {"kind": "grid", "l": 1, "m": 7},
                                "P": {"family": "grid_slab", "params": {"l": 1, "m": 7}}})");
    EXPECT_EQ(layout_to_json(s), layout_to_json(grid_slab(1, 7)));
}

TEST(LayoutIo, ErrorsCarryLineNumbers) {
    const char* text = "{\n \"group\": {\"kind\": \"cyclic\", \"n\": 12},\n \"P\": [6],\n \"r\": 1,\n \"r'\": 2,\n \"bogus\": 3\n}";
    try {
        parse_layout(text);
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_GT(e.line(), 0u);
    }
    EXPECT_THROW(parse_layout("{"), FormatError);
}
