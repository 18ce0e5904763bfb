// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace entdist::cli {

// Empty cells are undefined or inapplicable values.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

[[nodiscard]] Cell cell(std::optional<double> value);

// 9 significant digits; "nan" for non-finite values.
[[nodiscard]] std::string format_number(double value);

void write_csv(const Table& table, std::ostream& out);
// An array of row objects, or a bare object when `single_object` and there is
// one row.
void write_json(const Table& table, std::ostream& out, bool single_object);
void write_aligned(const Table& table, std::ostream& out);

}  // namespace entdist::cli
