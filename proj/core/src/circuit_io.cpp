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

#include "gqc/circuit_io.hpp"

#include <cmath>

#include "json_util.hpp"

namespace gqc {

namespace {

using detail::json;
using detail::ordered_json;

LogicalGate parse_gate(const json& rec, const Layout& layout, std::size_t line) {
    detail::reject_unknown_fields(rec, {"kind", "delta", "T", "p", "q"}, "gate record", line);
    for (const char* key : {"kind", "delta", "T", "p", "q"}) {
        if (!rec.contains(key)) throw FormatError(std::string("gate record needs field '") + key + "'", line);
    }
    LogicalGate g;
    if (!rec.at("kind").is_string()) throw FormatError("'kind' must be a string", line);
    try {
        g.kind = gate_kind_from_string(rec.at("kind").get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what(), line);
    }
    if (!rec.at("delta").is_number_integer()) throw FormatError("'delta' must be 0 or 1", line);
    g.delta = rec.at("delta").get<int>();
    if (g.delta != 0 && g.delta != 1) throw FormatError("'delta' must be 0 or 1", line);
    if (!rec.at("T").is_number() || !std::isfinite(rec.at("T").get<double>())) {
        throw FormatError("'T' must be a finite number", line);
    }
    g.T = rec.at("T").get<double>();
    g.p = detail::parse_element(rec.at("p"), layout.group(), line);
    g.q = detail::parse_element(rec.at("q"), layout.group(), line);
    for (const auto* site : {&g.p, &g.q}) {
        if (!layout.index_of(*site)) {
            throw FormatError("gate site " + layout.group().format(*site) + " is not in D", line);
        }
    }
    return g;
}

}  // namespace

LogicalCircuit parse_circuit(std::string_view json_text, std::shared_ptr<const Layout> layout) {
    if (!layout) throw std::invalid_argument("parse_circuit needs a layout");
    json j = detail::parse_json(json_text);
    auto lines = detail::record_lines(json_text, {"gates"});
    LogicalCircuit c;
    c.layout = layout;
    const json* list = &j;
    if (!j.is_array()) {
        detail::reject_unknown_fields(j, {"format", "version", "gates"}, "circuit", 1);
        if (j.contains("format") && j.at("format") != "gqc-circuit") {
            throw FormatError("format must be \"gqc-circuit\"", 1);
        }
        if (!j.contains("gates") || !j.at("gates").is_array()) throw FormatError("circuit needs a 'gates' list", 1);
        list = &j.at("gates");
    }
    std::size_t i = 0;
    for (const auto& rec : *list) {
        const std::size_t line = i < lines.size() ? lines[i] : 0;
        ++i;
        if (!rec.is_object()) throw FormatError("gate records must be objects", line);
        c.gates.push_back(parse_gate(rec, *layout, line));
    }
    return c;
}

LogicalCircuit load_circuit(const std::filesystem::path& path, std::shared_ptr<const Layout> layout) {
    return parse_circuit(detail::read_text_file(path), std::move(layout));
}

std::string circuit_to_json(const LogicalCircuit& circuit) {
    ordered_json j;
    j["format"] = "gqc-circuit";
    j["version"] = std::string(kVersion);
    ordered_json gates = ordered_json::array();
    for (const auto& g : circuit.gates) {
        ordered_json rec;
        rec["kind"] = to_string(g.kind);
        rec["delta"] = g.delta;
        rec["T"] = g.T;
        rec["p"] = ordered_json(detail::element_to_json(g.p, circuit.layout->group()));
        rec["q"] = ordered_json(detail::element_to_json(g.q, circuit.layout->group()));
        gates.push_back(std::move(rec));
    }
    j["gates"] = std::move(gates);
    return j.dump(1) + "\n";
}

}  // namespace gqc
