// Copyright (c) 2026 the rcflab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rcflab::report {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct ReportRecord {
    std::string experiment;
    std::vector<std::pair<std::string, Cell>> parameters;
    Table table;
    bool pass = false;
    double tolerance = 0.0;
};

// 17 significant digits: enough to round-trip binary64 exactly.
std::string format_double(double v);

// Header row plus data rows, LF endings; the experiment name, parameter
// echo, tolerance and verdict ride in front as '#' comment lines.
std::string to_csv(const ReportRecord& rec);

// One object: {experiment, parameters, rows, pass, tolerance}.
std::string to_json(const ReportRecord& rec);

} // namespace rcflab::report
