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

#include "qlatwit/report_io.h"

#include <Eigen/Core>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qlatwit {

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    if (res.ec != std::errc()) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return std::string(buf, res.ptr);
}

Json json_number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

namespace {

Json aux_json(const std::map<std::string, AuxValue> &aux) {
    Json out = Json::object();
    for (const auto &[key, value] : aux) {
        if (const double *d = std::get_if<double>(&value)) {
            out[key] = json_number(*d);
        } else {
            out[key] = std::get<std::string>(value);
        }
    }
    return out;
}

std::string escape_csv(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

Json to_json(const CriterionReport &r) {
    return Json{{"name", r.name},
                {"value", json_number(r.value)},
                {"bound", json_number(r.bound)},
                {"direction", r.direction == BoundDirection::kUpper ? "upper" : "lower"},
                {"violated", r.violated},
                {"margin", json_number(r.margin)},
                {"undefined", r.undefined},
                {"aux", aux_json(r.aux)}};
}

Json to_json(const MomentComparison::Row &row) {
    return Json{{"axis", row.axis},
                {"order", row.order},
                {"a", json_number(row.a)},
                {"b", json_number(row.b)},
                {"difference", json_number(row.difference)}};
}

Json versions() {
    return Json{{"qlatwit", kVersion},
                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)},
                {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

Json make_document(const std::string &command, Json config, Json results) {
    return Json{{"command", command},
                {"config", std::move(config)},
                {"results", std::move(results)},
                {"versions", versions()}};
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("Table::add: row width does not match the header");
    }
    rows.push_back(std::move(row));
}

void write_csv(std::ostream &os, const Table &table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << escape_csv(table.columns[i]);
    }
    os << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                os << ',';
            }
            std::visit(
                [&os](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        os << format_number(v);
                    } else if constexpr (std::is_same_v<T, long long>) {
                        os << std::to_string(v);
                    } else if constexpr (std::is_same_v<T, bool>) {
                        os << (v ? "true" : "false");
                    } else {
                        os << escape_csv(v);
                    }
                },
                row[i]);
        }
        os << '\n';
    }
}

void write_plot(std::ostream &os, const std::string &x_label, const std::string &y_label,
                const std::vector<std::pair<double, double>> &points) {
    os << "# " << x_label << ' ' << y_label << '\n';
    for (const auto &[x, y] : points) {
        os << format_number(x) << ' ' << format_number(y) << '\n';
    }
}

}  // namespace qlatwit
