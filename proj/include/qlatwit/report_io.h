// Copyright 2026 The qlatwit Authors
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

// Serialization of reports and result tables: JSON documents, CSV tables
// and two-column plot files. All number formatting is locale independent.

#ifndef QLATWIT_REPORT_IO_H
#define QLATWIT_REPORT_IO_H

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlatwit/criteria.h"

namespace qlatwit {

using Json = nlohmann::ordered_json;

inline constexpr const char *kVersion = "0.1.0";

/// Shortest decimal that round-trips; NaN and infinities become "nan", "inf", "-inf".
std::string format_number(double x);

/// A finite double, or null for NaN/inf.
Json json_number(double x);

Json to_json(const CriterionReport &report);
Json to_json(const MomentComparison::Row &row);

/// {qlatwit, eigen, nlohmann_json, openmp}.
Json versions();

Json make_document(const std::string &command, Json config, Json results);

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

void write_csv(std::ostream &os, const Table &table);

/// One "x y" pair per line, preceded by a "# x_label y_label" comment.
void write_plot(std::ostream &os, const std::string &x_label, const std::string &y_label,
                const std::vector<std::pair<double, double>> &points);

}  // namespace qlatwit

#endif
