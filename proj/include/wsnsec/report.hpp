// Copyright 2026 The wsnsec Authors
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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wsnsec/errors.hpp"

namespace wsnsec {

inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { csv, json };

using Cell = std::variant<double, std::int64_t, std::string>;

/// Rows of experiment output plus the parameters that produced them.
struct ResultTable {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) {
        detail::require(row.size() == columns.size(), "ResultTable: row width does not match header");
        rows.push_back(std::move(row));
    }

    std::size_t column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw domain_error("ResultTable: no column " + name);
    }

    double number(std::size_t row, const std::string& name) const {
        const Cell& c = rows.at(row).at(column_index(name));
        if (const auto* d = std::get_if<double>(&c)) return *d;
        if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
        throw domain_error("ResultTable: column " + name + " is not numeric");
    }

    std::string meta_value(const std::string& key) const {
        for (const auto& [k, v] : meta)
            if (k == key) return v;
        return {};
    }
};

/// Shortest decimal that round-trips; used for meta values.
inline std::string format_exact(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string format_csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_csv_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    return csv_quote(std::get<std::string>(c));
}

}  // namespace detail

/// "# k=v; k=v" comment line, header row, then data rows. LF endings.
inline std::string to_csv(const ResultTable& t) {
    std::string out = "#";
    for (std::size_t i = 0; i < t.meta.size(); ++i) {
        out += i ? "; " : " ";
        out += t.meta[i].first + "=" + t.meta[i].second;
    }
    out += '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + detail::csv_quote(t.columns[i]);
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + detail::csv_cell(row[i]);
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json to_json(const ResultTable& t) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) meta[k] = v;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            std::visit([&](const auto& v) { r[t.columns[i]] = v; }, row[i]);
        rows.push_back(std::move(r));
    }
    return {{"meta", std::move(meta)}, {"rows", std::move(rows)}};
}

inline ResultTable table_from_json(const nlohmann::ordered_json& j) {
    ResultTable t;
    for (const auto& [k, v] : j.at("meta").items()) t.meta.emplace_back(k, v.get<std::string>());
    const auto& rows = j.at("rows");
    if (!rows.empty())
        for (const auto& [k, v] : rows.front().items()) t.columns.push_back(k);
    for (const auto& r : rows) {
        std::vector<Cell> row;
        for (const auto& name : t.columns) {
            const auto& v = r.at(name);
            if (v.is_number_integer()) row.emplace_back(v.get<std::int64_t>());
            else if (v.is_number()) row.emplace_back(v.get<double>());
            else row.emplace_back(v.get<std::string>());
        }
        t.add_row(std::move(row));
    }
    return t;
}

inline std::string render(const ResultTable& t, OutputFormat format) {
    return format == OutputFormat::csv ? to_csv(t) : to_json(t).dump(2) + "\n";
}

/// Writes the table to path, or to stdout when path is "-" or empty.
inline void emit(const ResultTable& t, OutputFormat format, const std::string& path) {
    const std::string text = render(t, format);
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        if (!std::cout) throw io_error("emit: failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("emit: cannot open " + path);
    out << text;
    out.close();
    if (!out) throw io_error("emit: failed writing " + path);
}

}  // namespace wsnsec
