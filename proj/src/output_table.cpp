// Copyright 2026 The weaktension Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weaktension/output_table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace weaktension {

namespace {

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else return csv_field(v);
        },
        cell);
}

std::string json_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "null";
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? format_double(v) : "null";
            else return nlohmann::json(v).dump();
        },
        cell);
}

}  // namespace

const Cell* OutputTable::find_metadata(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return &v;
    }
    return nullptr;
}

std::size_t OutputTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (columns[k] == name) return k;
    }
    throw std::out_of_range("no column named " + name);
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string to_csv(const OutputTable& table) {
    std::string out;
    for (const auto& [key, value] : table.metadata) {
        out += "# " + key + "=" + csv_cell(value) + "\n";
    }
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        out += (k ? "," : "") + csv_field(table.columns[k]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            out += (k ? "," : "") + csv_cell(row[k]);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const OutputTable& table) {
    std::string out = "{\n  \"metadata\": {";
    for (std::size_t k = 0; k < table.metadata.size(); ++k) {
        out += (k ? ",\n    " : "\n    ") + nlohmann::json(table.metadata[k].first).dump() + ": " +
               json_cell(table.metadata[k].second);
    }
    out += table.metadata.empty() ? "},\n" : "\n  },\n";
    out += "  \"columns\": " + nlohmann::json(table.columns).dump() + ",\n  \"rows\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += r ? ",\n    [" : "\n    [";
        for (std::size_t k = 0; k < table.rows[r].size(); ++k) {
            out += (k ? ", " : "") + json_cell(table.rows[r][k]);
        }
        out += "]";
    }
    out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace weaktension
