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

#include "json_util.hpp"

#include <cctype>

#include <fstream>
#include <sstream>

namespace gqc::detail {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line;
        }
        throw FormatError(std::string("JSON syntax error: ") + e.what(), line);
    }
}

std::map<std::string, std::size_t> top_level_key_lines(std::string_view text) {
    std::map<std::string, std::size_t> out;
    int depth = 0;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
        } else if (c == '"') {
            const std::size_t start_line = line;
            std::string s;
            for (++i; i < text.size() && text[i] != '"'; ++i) {
                if (text[i] == '\\') ++i;
                if (i < text.size()) {
                    if (text[i] == '\n') ++line;
                    s += text[i];
                }
            }
            if (depth == 1) {
                std::size_t k = i + 1;
                while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
                if (k < text.size() && text[k] == ':') out.emplace(std::move(s), start_line);
            }
        } else if (c == '{' || c == '[') {
            ++depth;
        } else if (c == '}' || c == ']') {
            --depth;
        }
    }
    return out;
}

std::vector<std::size_t> record_lines(std::string_view text, std::initializer_list<std::string_view> record_keys) {
    struct Frame {
        char kind;
        bool records;
    };
    std::vector<Frame> stack;
    std::vector<std::size_t> lines;
    std::size_t line = 1;
    std::string last_string;
    bool last_was_key = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n') {
            ++line;
        } else if (c == '"') {
            std::string s;
            for (++i; i < text.size() && text[i] != '"'; ++i) {
                if (text[i] == '\\') ++i;
                if (i < text.size()) s += text[i];
            }
            last_string = std::move(s);
            last_was_key = false;
        } else if (c == ':') {
            last_was_key = true;
        } else if (c == '[') {
            bool records = stack.empty();
            if (last_was_key) {
                for (auto k : record_keys) {
                    if (last_string == k) records = true;
                }
            }
            stack.push_back({'[', records});
            last_was_key = false;
        } else if (c == '{') {
            if (!stack.empty() && stack.back().kind == '[' && stack.back().records) {
                lines.push_back(line);
            }
            stack.push_back({'{', false});
            last_was_key = false;
        } else if (c == ']' || c == '}') {
            if (!stack.empty()) stack.pop_back();
            last_was_key = false;
        } else if (c == ',') {
            last_was_key = false;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            last_was_key = false;
        }
    }
    return lines;
}

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                           std::size_t line) {
    if (!obj.is_object()) {
        throw FormatError(where + " must be a JSON object", line);
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw FormatError("unknown field '" + it.key() + "' in " + where, line);
        }
    }
}

GroupElement parse_element(const json& j, const GroupSpec& g, std::size_t line) {
    GroupElement a;
    if (g.is_cyclic()) {
        if (!j.is_number_integer()) {
            throw FormatError("cyclic sites must be integers, got " + j.dump(), line);
        }
        a = {j.get<std::int64_t>()};
    } else {
        if (!j.is_array()) {
            throw FormatError("grid sites must be arrays of integers, got " + j.dump(), line);
        }
        for (const auto& x : j) {
            if (!x.is_number_integer()) {
                throw FormatError("grid coordinates must be integers, got " + j.dump(), line);
            }
            a.push_back(x.get<std::int64_t>());
        }
    }
    try {
        g.check_element(a);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what(), line);
    }
    return a;
}

json element_to_json(const GroupElement& a, const GroupSpec& g) {
    if (g.is_cyclic()) return a.at(0);
    return json(a);
}

}  // namespace gqc::detail
