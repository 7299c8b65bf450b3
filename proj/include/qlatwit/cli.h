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

#ifndef QLATWIT_CLI_H
#define QLATWIT_CLI_H

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qlatwit/report_io.h"

namespace qlatwit::cli {

enum class Format { kJson, kCsv };

struct RunConfig {
    std::string command;
    std::optional<int> n;
    double p_min = 0.5;
    double p_max = 1.0;
    int steps = 11;
    int max_order = 4;
    std::array<double, 3> params{-3.2, -9.6, 0.8};
    bool optimize = false;
    int budget = 200;
    std::uint64_t seed = 1;
    Format format = Format::kJson;
    std::string out;

    Json to_json() const;
};

struct PlotData {
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<double, double>> points;
};

struct CommandOutput {
    Json results = Json::array();
    Table table;
    /// Summary lines; go to the error stream in CSV mode.
    std::vector<std::string> notes;
    std::optional<PlotData> plot;
    /// Optimizer trace, one JSON object per line.
    std::string trace;
};

/// Names accepted as <command>.
const std::vector<std::string> &command_names();

/// Runs one command and returns its results without writing anything.
CommandOutput run_command(const RunConfig &config);

/// Full entry point: parses `args` (without the program name), writes the
/// document to `out` or to --out, and returns the process exit code.
///   0  success
///   1  runtime failure
///   2  usage error (bad flags or preconditions)
///   3  dimension cap exceeded
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qlatwit::cli

#endif
