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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace weaktension {

/// Empty cells are std::monostate.
using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> metadata;  ///< kept in insertion order

    void add_metadata(std::string key, Cell value) { metadata.emplace_back(std::move(key), std::move(value)); }
    const Cell* find_metadata(const std::string& key) const;
    /// Index of a column; throws std::out_of_range if absent.
    std::size_t column(const std::string& name) const;
};

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double value);

/// Metadata as leading "# key=value" lines, then a header row and the body.
std::string to_csv(const OutputTable& table);
/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}; non-finite doubles become null.
std::string to_json(const OutputTable& table);

}  // namespace weaktension
