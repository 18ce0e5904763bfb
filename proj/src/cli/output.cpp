// SPDX-License-Identifier: MIT
#include "entdist/cli/output.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace entdist::cli {

namespace {

std::string text_of(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    return "nan";
}

}  // namespace

Cell cell(std::optional<double> value) {
    if (value) return *value;
    return std::monostate{};
}

std::string format_number(double value) {
    if (!std::isfinite(value)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << text_of(row[i]);
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out, bool single_object) {
    auto records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            auto& slot = obj[table.columns[i]];
            if (std::holds_alternative<std::string>(c)) {
                slot = std::get<std::string>(c);
            } else if (std::holds_alternative<double>(c) && std::isfinite(std::get<double>(c))) {
                const double rounded = std::strtod(format_number(std::get<double>(c)).c_str(), nullptr);
                if (rounded == std::trunc(rounded) && std::fabs(rounded) < 1e15) {
                    slot = static_cast<long long>(rounded);
                } else {
                    slot = rounded;
                }
            } else {
                slot = nullptr;
            }
        }
        records.push_back(std::move(obj));
    }
    if (single_object && records.size() == 1) {
        out << records[0].dump(2) << '\n';
    } else {
        out << records.dump(2) << '\n';
    }
}

void write_aligned(const Table& table, std::ostream& out) {
    std::vector<std::size_t> width(table.columns.size());
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = table.columns[i].size();
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], text_of(row[i]).size());
    }
    auto line = [&](auto&& text_at) {
        std::string s;
        for (std::size_t i = 0; i < width.size(); ++i) {
            const std::string t = text_at(i);
            s += t + std::string(width[i] - t.size() + (i + 1 < width.size() ? 2 : 0), ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
    };
    line([&](std::size_t i) { return table.columns[i]; });
    for (const auto& row : table.rows) line([&](std::size_t i) { return text_of(row[i]); });
}

}  // namespace entdist::cli
