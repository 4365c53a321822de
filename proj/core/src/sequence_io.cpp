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

#include "gqc/sequence_io.hpp"

#include <cmath>

#include "json_util.hpp"

namespace gqc {

namespace {

using detail::json;
using detail::ordered_json;

template <typename Mat>
Mat parse_matrix(const json& j, std::size_t line) {
    constexpr int dim = Mat::RowsAtCompileTime;
    if (!j.is_array() || j.size() != static_cast<std::size_t>(dim * dim)) {
        throw FormatError("matrix must list " + std::to_string(dim * dim) + " [re, im] pairs", line);
    }
    Mat m;
    for (int i = 0; i < dim * dim; ++i) {
        const auto& e = j[static_cast<std::size_t>(i)];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw FormatError("matrix entries must be [re, im] number pairs", line);
        }
        m(i / dim, i % dim) = cplx(e[0].get<double>(), e[1].get<double>());
    }
    return m;
}

template <typename Mat>
ordered_json matrix_to_json(const Mat& m) {
    ordered_json out = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) out.push_back({m(i, k).real(), m(i, k).imag()});
    return out;
}

double finite_number(const json& obj, const char* key, std::size_t line) {
    if (!obj.contains(key)) throw FormatError(std::string("missing field '") + key + "'", line);
    const auto& v = obj.at(key);
    if (!v.is_number()) throw FormatError(std::string("field '") + key + "' must be a number", line);
    double x = v.get<double>();
    if (!std::isfinite(x)) throw FormatError(std::string("field '") + key + "' must be finite", line);
    return x;
}

class Parser {
   public:
    Parser(const GroupSpec& group, std::vector<std::size_t> lines) : group_(group), lines_(std::move(lines)) {}

    GlobalGateSequence records(const json& list, std::size_t line) {
        if (!list.is_array()) throw FormatError("instruction list must be an array", line);
        GlobalGateSequence seq;
        for (const auto& rec : list) record(rec, seq);
        return seq;
    }

   private:
    std::size_t next_line() { return next_ < lines_.size() ? lines_[next_++] : 0; }

    void record(const json& rec, GlobalGateSequence& seq) {
        const std::size_t line = next_line();
        if (!rec.is_object()) throw FormatError("instruction records must be objects", line);
        if (!rec.contains("type") || !rec.at("type").is_string()) {
            throw FormatError("instruction record needs a string field 'type'", line);
        }
        const auto type = rec.at("type").get<std::string>();
        if (type == "two_qubit") {
            detail::reject_unknown_fields(rec, {"type", "generator", "matrix", "d", "t"}, "two_qubit record", line);
            if (rec.contains("generator") == rec.contains("matrix")) {
                throw FormatError("two_qubit record needs exactly one of 'generator' and 'matrix'", line);
            }
            if (!rec.contains("d")) throw FormatError("two_qubit record needs a displacement 'd'", line);
            try {
                TwoQubitHermitian gen =
                    rec.contains("generator")
                        ? TwoQubitHermitian::from_name(rec.at("generator").is_string()
                                                           ? rec.at("generator").get<std::string>()
                                                           : throw FormatError("'generator' must be a string", line))
                        : TwoQubitHermitian(parse_matrix<Matrix4>(rec.at("matrix"), line));
                GroupElement d = detail::parse_element(rec.at("d"), group_, line);
                if (group_.is_zero(d)) throw FormatError("displacement d must be nonzero", line);
                seq.append(TwoQubitGate{{std::move(gen), std::move(d)}, finite_number(rec, "t", line)});
            } catch (const std::invalid_argument& e) {
                throw FormatError(e.what(), line);
            }
        } else if (type == "one_qubit") {
            detail::reject_unknown_fields(rec, {"type", "gate", "matrix"}, "one_qubit record", line);
            if (rec.contains("gate") == rec.contains("matrix")) {
                throw FormatError("one_qubit record needs exactly one of 'gate' and 'matrix'", line);
            }
            Matrix2 u;
            try {
                u = rec.contains("gate") ? named_one_qubit_gate(rec.at("gate").get<std::string>())
                                         : parse_matrix<Matrix2>(rec.at("matrix"), line);
            } catch (const std::invalid_argument& e) {
                throw FormatError(e.what(), line);
            } catch (const json::exception& e) {
                throw FormatError(e.what(), line);
            }
            if (!is_unitary(u)) throw FormatError("one_qubit matrix is not unitary", line);
            seq.append(OneQubitGate{u});
        } else if (type == "repeat") {
            detail::reject_unknown_fields(rec, {"type", "count", "body"}, "repeat record", line);
            if (!rec.contains("count") || !rec.at("count").is_number_unsigned()) {
                throw FormatError("repeat record needs a non-negative integer 'count'", line);
            }
            if (!rec.contains("body")) throw FormatError("repeat record needs a 'body'", line);
            auto count = rec.at("count").get<std::uint64_t>();
            auto body = records(rec.at("body"), line);
            seq.append_repeat(count, std::move(body));
        } else {
            throw FormatError("unknown instruction type '" + type + "'", line);
        }
    }

    const GroupSpec& group_;
    std::vector<std::size_t> lines_;
    std::size_t next_ = 0;
};

SequenceMetadata parse_metadata(const json& j) {
    SequenceMetadata m;
    if (!j.is_object()) throw FormatError("metadata must be an object");
    if (j.contains("mode")) m.mode = j.at("mode").get<std::string>();
    if (j.contains("epsilon_total")) m.epsilon_total = j.at("epsilon_total").get<double>();
    if (j.contains("predicted_bound")) m.predicted_bound = j.at("predicted_bound").get<double>();
    if (j.contains("gates")) {
        for (const auto& g : j.at("gates")) {
            GateCompilationInfo info;
            info.target = g.value("target", "");
            info.n1 = g.value("N1", std::uint64_t{0});
            info.n2 = g.value("N2", std::uint64_t{0});
            info.epsilon = g.value("epsilon", 0.0);
            info.predicted_bound = g.value("predicted_bound", 0.0);
            if (g.contains("measured_error")) info.measured_error = g.at("measured_error").get<double>();
            if (g.contains("leakage")) info.leakage = g.at("leakage").get<double>();
            if (g.contains("met")) info.met = g.at("met").get<bool>();
            m.gates.push_back(std::move(info));
        }
    }
    return m;
}

ordered_json metadata_to_json(const SequenceMetadata& m) {
    ordered_json j = ordered_json::object();
    if (!m.mode.empty()) j["mode"] = m.mode;
    if (m.epsilon_total) j["epsilon_total"] = *m.epsilon_total;
    if (m.predicted_bound) j["predicted_bound"] = *m.predicted_bound;
    if (!m.gates.empty()) {
        ordered_json gates = ordered_json::array();
        for (const auto& g : m.gates) {
            ordered_json e;
            e["target"] = g.target;
            e["N1"] = g.n1;
            e["N2"] = g.n2;
            e["epsilon"] = g.epsilon;
            e["predicted_bound"] = g.predicted_bound;
            if (g.measured_error) e["measured_error"] = *g.measured_error;
            if (g.leakage) e["leakage"] = *g.leakage;
            if (g.met) e["met"] = *g.met;
            gates.push_back(std::move(e));
        }
        j["gates"] = std::move(gates);
    }
    return j;
}

ordered_json items_to_json(const GlobalGateSequence& seq, const GroupSpec& group) {
    ordered_json list = ordered_json::array();
    for (const auto& item : seq.items()) {
        ordered_json rec;
        if (const auto* g = std::get_if<GateInstruction>(&item)) {
            if (const auto* two = std::get_if<TwoQubitGate>(g)) {
                rec["type"] = "two_qubit";
                const auto& gen = two->hamiltonian.generator;
                if (!gen.name().empty()) {
                    rec["generator"] = gen.name();
                } else {
                    rec["matrix"] = matrix_to_json(gen.matrix());
                }
                rec["d"] = ordered_json(detail::element_to_json(two->hamiltonian.d, group));
                rec["t"] = two->duration;
            } else {
                rec["type"] = "one_qubit";
                rec["matrix"] = matrix_to_json(std::get<OneQubitGate>(*g).unitary);
            }
        } else {
            const auto& rep = std::get<RepeatBlock>(item);
            rec["type"] = "repeat";
            rec["count"] = rep.count;
            rec["body"] = items_to_json(*rep.body, group);
        }
        list.push_back(std::move(rec));
    }
    return list;
}

}  // namespace

Matrix2 named_one_qubit_gate(std::string_view name) {
    const cplx i{0.0, 1.0};
    const double h = 1.0 / std::sqrt(2.0);
    Matrix2 u;
    if (name == "I") {
        u << 1, 0, 0, 1;
    } else if (name == "X") {
        u << 0, 1, 1, 0;
    } else if (name == "Y") {
        u << 0, -i, i, 0;
    } else if (name == "Z") {
        u << 1, 0, 0, -1;
    } else if (name == "H") {
        u << h, h, h, -h;
    } else if (name == "S") {
        u << 1, 0, 0, i;
    } else {
        throw std::invalid_argument("unknown one-qubit gate '" + std::string(name) + "'");
    }
    return u;
}

GlobalGateSequence parse_sequence(std::string_view json_text, const GroupSpec& group) {
    json j = detail::parse_json(json_text);
    Parser parser(group, detail::record_lines(json_text, {"instructions", "body"}));
    try {
        if (j.is_array()) return parser.records(j, 1);
        detail::reject_unknown_fields(j, {"format", "version", "metadata", "instructions"}, "sequence", 1);
        if (j.contains("format") && j.at("format") != "gqc-sequence") {
            throw FormatError("format must be \"gqc-sequence\"", 1);
        }
        if (!j.contains("instructions")) throw FormatError("sequence needs an 'instructions' list", 1);
        GlobalGateSequence seq = parser.records(j.at("instructions"), 1);
        if (j.contains("metadata")) seq.metadata = parse_metadata(j.at("metadata"));
        return seq;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed sequence: ") + e.what());
    }
}

GlobalGateSequence load_sequence(const std::filesystem::path& path, const GroupSpec& group) {
    return parse_sequence(detail::read_text_file(path), group);
}

std::string sequence_to_json(const GlobalGateSequence& sequence, const GroupSpec& group) {
    ordered_json j;
    j["format"] = "gqc-sequence";
    j["version"] = std::string(kVersion);
    j["metadata"] = metadata_to_json(sequence.metadata);
    j["instructions"] = items_to_json(sequence, group);
    return j.dump(1) + "\n";
}

void save_sequence(const std::filesystem::path& path, const GlobalGateSequence& sequence, const GroupSpec& group) {
    detail::write_text_file(path, sequence_to_json(sequence, group));
}

}  // namespace gqc
