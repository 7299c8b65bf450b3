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

#include "qlatwit/optimize.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>


namespace qlatwit {

namespace {

using Point = std::array<double, 3>;

PulseParams to_params(const Point &x) { return {x[0], x[1], x[2]}; }
Point to_point(const PulseParams &p) { return {p.theta_xx, p.theta_yy, p.theta_z}; }

void require_finite(const PulseParams &p) {
    if (!std::isfinite(p.theta_xx) || !std::isfinite(p.theta_yy) || !std::isfinite(p.theta_z)) {
        throw std::invalid_argument("PulseParams: angles must be finite");
    }
}

// Evaluation counter shared by all restarts; stops the search once the budget is spent.
class Objective {
   public:
    Objective(const ChainSpec &chain, int budget, std::ostream *trace)
        : chain_(chain), budget_(budget), trace_(trace) {}

    bool exhausted() const { return used_ >= std::min(budget_, limit_); }
    void set_limit(int limit) { limit_ = limit; }
    int used() const { return used_; }

    double ratio(const Point &x) {
        ++used_;
        const double r = violation_ratio(pulse_state(chain_, to_params(x)));
        if (trace_) {
            nlohmann::json line = {{"iteration", used_}, {"params", x}, {"ratio", r}};
            *trace_ << line.dump() << '\n';
        }
        if (r > best_ratio_) {
            best_ratio_ = r;
            best_ = x;
        }
        return r;
    }

    const Point &best() const { return best_; }
    double best_ratio() const { return best_ratio_; }

   private:
    ChainSpec chain_;
    int budget_;
    std::ostream *trace_;
    int used_ = 0;
    int limit_ = std::numeric_limits<int>::max();
    Point best_{};
    double best_ratio_ = -INFINITY;
};

Point add(const Point &a, const Point &b, double s) { return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; }
Point sub(const Point &a, const Point &b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Nelder-Mead maximizing the ratio (minimizing its negative).
void nelder_mead(Objective &f, const Point &start, double step) {
    constexpr int kDim = 3;
    std::array<Point, kDim + 1> simplex;
    std::array<double, kDim + 1> cost{};
    simplex[0] = start;
    for (int i = 0; i < kDim; ++i) {
        simplex[i + 1] = start;
        simplex[i + 1][i] += step;
    }
    for (int i = 0; i <= kDim; ++i) {
        if (f.exhausted()) {
            return;
        }
        cost[i] = -f.ratio(simplex[i]);
    }

    while (!f.exhausted()) {
        std::array<int, kDim + 1> order{0, 1, 2, 3};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return cost[a] < cost[b]; });
        std::array<Point, kDim + 1> s;
        std::array<double, kDim + 1> c{};
        for (int i = 0; i <= kDim; ++i) {
            s[i] = simplex[order[i]];
            c[i] = cost[order[i]];
        }
        simplex = s;
        cost = c;
        if (std::abs(cost[kDim] - cost[0]) < 1e-13) {
            return;
        }

        Point centroid{};
        for (int i = 0; i < kDim; ++i) {
            centroid = add(centroid, simplex[i], 1.0 / kDim);
        }
        const Point dir = sub(centroid, simplex[kDim]);
        const Point reflected = add(centroid, dir, 1.0);
        const double fr = -f.ratio(reflected);
        if (fr < cost[0]) {
            if (f.exhausted()) {
                return;
            }
            const Point expanded = add(centroid, dir, 2.0);
            const double fe = -f.ratio(expanded);
            if (fe < fr) {
                simplex[kDim] = expanded;
                cost[kDim] = fe;
            } else {
                simplex[kDim] = reflected;
                cost[kDim] = fr;
            }
            continue;
        }
        if (fr < cost[kDim - 1]) {
            simplex[kDim] = reflected;
            cost[kDim] = fr;
            continue;
        }
        if (f.exhausted()) {
            return;
        }
        const bool outside = fr < cost[kDim];
        const Point contracted = add(centroid, dir, outside ? 0.5 : -0.5);
        const double fc = -f.ratio(contracted);
        if (fc < std::min(fr, cost[kDim])) {
            simplex[kDim] = contracted;
            cost[kDim] = fc;
            continue;
        }
        for (int i = 1; i <= kDim; ++i) {
            if (f.exhausted()) {
                return;
            }
            simplex[i] = add(simplex[0], sub(simplex[i], simplex[0]), 0.5);
            cost[i] = -f.ratio(simplex[i]);
        }
    }
}

}  // namespace

LinearOperator pulse_generator(const ChainSpec &chain, const PulseParams &params) {
    require_finite(params);
    const HilbertSpace space = chain.space();
    check_dim_cap(space.dim(), "pulse_generator");
    const auto d = static_cast<Eigen::Index>(space.dim());
    Matrix g = Matrix::Zero(d, d);
    for (int k = 1; k < chain.n_sites(); ++k) {
        // jx jx = sigma_x sigma_x / 4, likewise for y.
        const std::array<std::pair<int, Axis>, 2> xx{{{k, Axis::kX}, {k + 1, Axis::kX}}};
        const std::array<std::pair<int, Axis>, 2> yy{{{k, Axis::kY}, {k + 1, Axis::kY}}};
        g += (params.theta_xx / 4) * pauli_string(chain, xx).matrix();
        g += (params.theta_yy / 4) * pauli_string(chain, yy).matrix();
    }
    g += params.theta_z * collective_spin(chain, Axis::kZ).matrix();
    return LinearOperator(space, std::move(g), true);
}

LinearOperator pulse_unitary(const ChainSpec &chain, const PulseParams &params) {
    return matrix_exponential(pulse_generator(chain, params), Complex(0, -1));
}

PureState pulse_state(const ChainSpec &chain, const PulseParams &params) {
    const PureState up = PureState::basis(chain.space(), 0);
    return evolve(pulse_generator(chain, params), 1.0, up);
}

double violation_ratio(StateRef state) {
    const CriterionReport r = collective_uncertainty_criterion(state);
    if (!(r.bound > 0)) {
        throw std::domain_error("violation_ratio: state has no particles");
    }
    return (r.bound - r.value) / r.bound;
}

OptimizerResult optimize_pulse(const ChainSpec &chain, const PulseParams &initial, const OptimizerOptions &options) {
    require_finite(initial);
    if (options.budget < 1) {
        throw std::invalid_argument("optimize_pulse: budget must be at least 1");
    }
    if (options.restarts < 1) {
        throw std::invalid_argument("optimize_pulse: need at least one restart");
    }
    Objective f(chain, options.budget, options.trace);
    const Point start = to_point(initial);
    OptimizerResult result;
    result.initial = initial;
    result.initial_ratio = f.ratio(start);

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> jitter(0.0, 1.0);
    const int remaining = options.budget - 1;
    for (int r = 0; r < options.restarts && !f.exhausted(); ++r) {
        Point from = r == 0 ? start : f.best();
        if (r > 0) {
            for (double &v : from) {
                v += jitter(rng);
            }
        }
        // Each restart gets an equal share; the last one also takes what earlier ones left over.
        const bool last = r + 1 == options.restarts;
        f.set_limit(last ? options.budget : f.used() + remaining / options.restarts);
        nelder_mead(f, from, options.initial_step);
    }

    result.params = to_params(f.best());
    result.ratio = f.best_ratio();
    result.evaluations = f.used();
    return result;
}

}  // namespace qlatwit
