// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#include "rcflab/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace rcflab::report {

namespace {

std::string cell_to_string(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

nlohmann::ordered_json cell_to_json(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
    if (const auto* d = std::get_if<double>(&cell)) return *d; // non-finite -> null
    return std::get<std::string>(cell);
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_csv(const ReportRecord& rec) {
    std::string out;
    out += "# experiment: " + rec.experiment + "\n";
    for (const auto& [key, value] : rec.parameters)
        out += "# " + key + ": " + cell_to_string(value) + "\n";
    out += "# tolerance: " + format_double(rec.tolerance) + "\n";
    out += std::string("# pass: ") + (rec.pass ? "true" : "false") + "\n";

    for (std::size_t k = 0; k < rec.table.columns.size(); ++k) {
        if (k) out += ',';
        out += rec.table.columns[k];
    }
    out += '\n';
    for (const auto& row : rec.table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += cell_to_string(row[k]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const ReportRecord& rec) {
    nlohmann::ordered_json j;
    j["experiment"] = rec.experiment;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : rec.parameters) params[key] = cell_to_json(value);
    j["parameters"] = std::move(params);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : rec.table.rows) {
        auto obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < row.size() && k < rec.table.columns.size(); ++k)
            obj[rec.table.columns[k]] = cell_to_json(row[k]);
        rows.push_back(std::move(obj));
    }
    j["rows"] = std::move(rows);
    j["pass"] = rec.pass;
    j["tolerance"] = rec.tolerance;
    return j.dump(2) + "\n";
}

} // namespace rcflab::report
