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

// Single-pulse sequences on a unit-filled chain and a Nelder-Mead search
// over their three angles.
//
//   U = exp(-i [ t_xx sum_k jx(k) jx(k+1) + t_yy sum_k jy(k) jy(k+1) + t_z sum_k jz(k) ])
//
// with open-chain couplings and j = sigma/2 on each occupied site.

#ifndef QLATWIT_OPTIMIZE_H
#define QLATWIT_OPTIMIZE_H

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "qlatwit/criteria.h"
#include "qlatwit/qcore.h"
#include "qlatwit/spinchain.h"

namespace qlatwit {

struct PulseParams {
    double theta_xx = 0;
    double theta_yy = 0;
    double theta_z = 0;

    bool operator==(const PulseParams &) const = default;
};

LinearOperator pulse_generator(const ChainSpec &chain, const PulseParams &params);
LinearOperator pulse_unitary(const ChainSpec &chain, const PulseParams &params);

/// U |up ... up>.
PureState pulse_state(const ChainSpec &chain, const PulseParams &params);

/// 1 - sum Var(J) / (<N>/2). Throws std::domain_error when <N> = 0.
double violation_ratio(StateRef state);

struct OptimizerOptions {
    int budget = 200;  // objective evaluations, initial point included
    std::uint64_t seed = 1;
    int restarts = 3;
    double initial_step = 0.5;
    /// When set, one JSON object per evaluation: {"iteration", "params", "ratio"}.
    std::ostream *trace = nullptr;
};

struct OptimizerResult {
    PulseParams params;
    double ratio = 0;
    PulseParams initial;
    double initial_ratio = 0;
    int evaluations = 0;
};

OptimizerResult optimize_pulse(const ChainSpec &chain, const PulseParams &initial,
                               const OptimizerOptions &options = {});

}  // namespace qlatwit

#endif
