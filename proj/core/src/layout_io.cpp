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

#include "gqc/layout_io.hpp"

#include <set>

#include "json_util.hpp"

namespace gqc {

using detail::json;

namespace {

GroupSpec parse_group(const json& j) {
    detail::reject_unknown_fields(j, {"kind", "n", "l", "m"}, "group");
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw FormatError("group.kind must be \"cyclic\" or \"grid\"");
    }
    auto kind = j["kind"].get<std::string>();
    try {
        if (kind == "cyclic") {
            if (!j.contains("n") || !j["n"].is_number_integer()) throw FormatError("cyclic group needs integer n");
            if (j.contains("l") || j.contains("m")) throw FormatError("cyclic group takes only n");
            return GroupSpec::cyclic(j["n"].get<std::int64_t>());
        }
        if (kind == "grid") {
            if (!j.contains("l") || !j["l"].is_number_integer() || !j.contains("m") ||
                !j["m"].is_number_integer()) {
                throw FormatError("grid group needs integer l and m");
            }
            if (j.contains("n")) throw FormatError("grid group takes only l and m");
            return GroupSpec::grid(j["l"].get<int>(), j["m"].get<std::int64_t>());
        }
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    throw FormatError("unknown group kind '" + kind + "'");
}

Layout parse_family(const json& spec) {
    detail::reject_unknown_fields(spec, {"family", "params"}, "P family");
    if (!spec.contains("family") || !spec["family"].is_string()) {
        throw FormatError("P.family must be a string");
    }
    FamilyParams params;
    if (spec.contains("params")) {
        const auto& p = spec["params"];
        detail::reject_unknown_fields(p, {"n", "l", "m"}, "P.params");
        if (p.contains("n")) params.n = p["n"].get<std::int64_t>();
        if (p.contains("l")) params.l = p["l"].get<int>();
        if (p.contains("m")) params.m = p["m"].get<std::int64_t>();
    }
    try {
        return builtin_layout(layout_family_from_string(spec["family"].get<std::string>()), params);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

}  // namespace

namespace {

// `field` tracks the top-level key being read so errors can name its line.
Layout parse_layout_object(const json& j, std::string& field) {
    if (!j.is_object()) throw FormatError("layout must be a JSON object");
    static const std::set<std::string> allowed{"format", "version", "group", "D", "P", "r", "r'", "W"};
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            field = key;
            throw FormatError("unknown layout field '" + key + "'");
        }
    }
    if (!j.contains("P")) {
        throw FormatError("layout needs field P");
    }

    std::optional<Layout> family;
    if (j["P"].is_object()) {
        field = "P";
        family = parse_family(j["P"]);
    }

    if (!j.contains("group") && !family) {
        throw FormatError("layout needs field group");
    }
    field = "group";
    GroupSpec g = j.contains("group") ? parse_group(j["group"]) : family->group();
    if (family && !(g == family->group())) {
        throw FormatError("group does not match the P family");
    }

    std::vector<GroupElement> D;
    field = "D";
    if (j.contains("D")) {
        if (!j["D"].is_array()) throw FormatError("D must be a list of sites");
        for (const auto& s : j["D"]) D.push_back(detail::parse_element(s, g));
    } else {
        D = g.default_sites();
    }

    std::vector<GroupElement> P;
    GroupElement r, rp;
    field = "P";
    if (family) {
        P = family->logical_sites();
        r = family->reference();
        rp = family->reference_prime();
        if (j.contains("D") && D != family->sites()) {
            throw FormatError("D does not match the P family");
        }
        if (j.contains("r") && detail::parse_element(j["r"], g) != r) {
            throw FormatError("r does not match the P family");
        }
        if (j.contains("r'") && detail::parse_element(j["r'"], g) != rp) {
            throw FormatError("r' does not match the P family");
        }
    } else {
        if (!j["P"].is_array()) throw FormatError("P must be a list of sites or a family object");
        for (const auto& s : j["P"]) P.push_back(detail::parse_element(s, g));
        if (!j.contains("r") || !j.contains("r'")) throw FormatError("layout needs fields r and r'");
        field = "r";
        r = detail::parse_element(j["r"], g);
        field = "r'";
        rp = detail::parse_element(j["r'"], g);
    }

    std::vector<WeightEntry> overrides;
    field = "W";
    if (j.contains("W")) {
        const auto& w = j["W"];
        if (w.is_string()) {
            if (w.get<std::string>() != "uniform") throw FormatError("W must be \"uniform\" or a list");
        } else if (w.is_array()) {
            for (const auto& e : w) {
                if (!e.is_array() || e.size() != 3 || !e[2].is_number()) {
                    throw FormatError("W entries must be [p, q, value], got " + e.dump());
                }
                overrides.push_back({detail::parse_element(e[0], g), detail::parse_element(e[1], g),
                                     e[2].get<double>()});
            }
        } else {
            throw FormatError("W must be \"uniform\" or a list");
        }
    }
    field = "P";
    try {
        return Layout(g, std::move(D), std::move(P), std::move(r), std::move(rp), overrides);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

}  // namespace

Layout parse_layout(std::string_view json_text) {
    json j = detail::parse_json(json_text);
    std::string field;
    auto line_of = [&] {
        const auto lines = detail::top_level_key_lines(json_text);
        auto it = lines.find(field);
        return it == lines.end() ? std::size_t{0} : it->second;
    };
    try {
        return parse_layout_object(j, field);
    } catch (const json::exception& e) {
        throw FormatError(std::string("layout: ") + e.what(), line_of());
    } catch (const FormatError& e) {
        if (e.line() != 0) throw;
        throw FormatError(e.what(), line_of());
    }
}

Layout load_layout(const std::filesystem::path& path) {
    return parse_layout(detail::read_text_file(path));
}

std::string layout_to_json(const Layout& layout) {
    const auto& g = layout.group();
    detail::ordered_json j;
    j["format"] = "gqc-layout";
    j["version"] = std::string(kVersion);
    if (g.is_cyclic()) {
        j["group"] = {{"kind", "cyclic"}, {"n", g.order()}};
    } else {
        j["group"] = {{"kind", "grid"}, {"l", g.rank()}, {"m", g.side()}};
    }
    if (layout.sites() != g.default_sites()) {
        auto D = detail::ordered_json::array();
        for (const auto& s : layout.sites()) D.push_back(detail::ordered_json(detail::element_to_json(s, g)));
        j["D"] = D;
    }
    auto P = detail::ordered_json::array();
    for (const auto& p : layout.logical_sites()) P.push_back(detail::ordered_json(detail::element_to_json(p, g)));
    j["P"] = P;
    j["r"] = detail::element_to_json(layout.reference(), g);
    j["r'"] = detail::element_to_json(layout.reference_prime(), g);
    if (layout.has_uniform_weights()) {
        j["W"] = "uniform";
    } else {
        auto W = detail::ordered_json::array();
        for (std::size_t p = 0; p < layout.size(); ++p) {
            for (std::size_t q = 0; q < layout.size(); ++q) {
                if (p != q && layout.weight(p, q) != 1.0) {
                    W.push_back({detail::element_to_json(layout.site(p), g),
                                 detail::element_to_json(layout.site(q), g), layout.weight(p, q)});
                }
            }
        }
        j["W"] = W;
    }
    return j.dump(2) + "\n";
}

}  // namespace gqc
