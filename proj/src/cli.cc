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

#include "qlatwit/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qlatwit/bosonic.h"
#include "qlatwit/channels.h"
#include "qlatwit/criteria.h"
#include "qlatwit/optimize.h"
#include "qlatwit/spinchain.h"

namespace qlatwit::cli {

namespace {

const std::vector<std::string> kReportColumns = {"state",     "criterion", "value",  "bound",
                                                 "direction", "violated",  "margin", "undefined"};

void add_report(CommandOutput &out, const std::string &state, const CriterionReport &r) {
    Json j = to_json(r);
    out.results.push_back(Json{{"kind", "report"}, {"state", state}, {"report", std::move(j)}});
    if (out.table.columns.empty()) {
        out.table.columns = kReportColumns;
    }
    out.table.add({state, r.name, r.value, r.bound, std::string(r.direction == BoundDirection::kUpper ? "upper" : "lower"),
                   r.violated, r.margin, r.undefined});
}

int require_n(const RunConfig &c, int fallback, int lo, int hi, bool even) {
    const int n = c.n.value_or(fallback);
    if (n < lo || n > hi) {
        throw std::invalid_argument(c.command + ": --n must lie in [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "], got " + std::to_string(n));
    }
    if (even && n % 2 != 0) {
        throw std::invalid_argument(c.command + ": --n must be even, got " + std::to_string(n));
    }
    return n;
}

std::string fmt(double x) { return format_number(x); }

CommandOutput cluster_witness(const RunConfig &c) {
    const int n = require_n(c, 6, 2, 12, true);
    const ChainSpec chain(n);
    check_dim_cap(chain.space().dim(), "cluster-witness");
    const ChainCorrelators corr(chain);
    CommandOutput out;

    auto run_all = [&](const std::string &name, StateRef state) {
        add_report(out, name, corr.witness(state));
        add_report(out, name, corr.squared(state));
        add_report(out, name, corr.variance_x(state));
    };

    const PureState cluster = cluster_state_via_phase_gate(chain);
    run_all("cluster", cluster);

    // x on odd sites, z up on even sites: every odd-site correlator is 1, every even one 0.
    std::vector<BlochAxis> pattern;
    for (int k = 1; k <= n; ++k) {
        pattern.push_back(k % 2 ? BlochAxis{Axis::kX, 1} : BlochAxis{Axis::kZ, 1});
    }
    run_all("saturating_product", product_state(pattern));

    run_all("totally_mixed", totally_mixed_state(n));
    return out;
}

double least_squares_slope(const std::vector<std::pair<double, double>> &pts) {
    if (pts.size() < 2) {
        return NAN;
    }
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxx > 0 ? sxy / sxx : NAN;
}

CommandOutput decoherence_scan(const RunConfig &c) {
    const int n = require_n(c, 6, 2, 10, true);
    if (c.steps < 1) {
        throw std::invalid_argument("decoherence-scan: empty grid (--steps must be >= 1)");
    }
    if (!(0.5 <= c.p_min && c.p_min <= c.p_max && c.p_max <= 1.0)) {
        throw std::invalid_argument("decoherence-scan: need 0.5 <= p-min <= p-max <= 1");
    }
    check_dim_cap(std::size_t{1} << n, "decoherence-scan");
    std::vector<double> grid(c.steps);
    for (int i = 0; i < c.steps; ++i) {
        grid[i] = c.steps == 1 ? c.p_min : c.p_min + (c.p_max - c.p_min) * i / (c.steps - 1);
    }
    std::vector<CriterionReport> reports(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < c.steps; ++i) {
        reports[i] = decoherence_experiment(n, grid[i]);
    }

    CommandOutput out;
    out.table.columns = {"n", "p", "value", "bound", "violated"};
    std::vector<std::pair<double, double>> normalized;
    for (int i = 0; i < c.steps; ++i) {
        const CriterionReport &r = reports[i];
        out.results.push_back(Json{{"kind", "row"},
                                   {"n", n},
                                   {"p", json_number(grid[i])},
                                   {"value", json_number(r.value)},
                                   {"bound", json_number(r.bound)},
                                   {"violated", r.violated}});
        out.table.add({static_cast<long long>(n), grid[i], r.value, r.bound, r.violated});
        normalized.emplace_back(grid[i], r.value / n);
    }

    const double slope = least_squares_slope(normalized);
    std::optional<double> grid_crossing;
    for (std::size_t i = 1; i < reports.size(); ++i) {
        const double a = reports[i - 1].value - reports[i - 1].bound;
        const double b = reports[i].value - reports[i].bound;
        if ((a <= 0 && b > 0) || (a > 0 && b <= 0)) {
            grid_crossing = grid[i - 1] + (grid[i] - grid[i - 1]) * (-a) / (b - a);
            break;
        }
    }
    const double exact = witness_crossing(n);
    out.results.push_back(Json{{"kind", "summary"},
                               {"slope", json_number(slope)},
                               {"grid_crossing", grid_crossing ? json_number(*grid_crossing) : Json(nullptr)},
                               {"bisection_crossing", json_number(exact)}});
    out.notes.push_back("slope " + fmt(slope));
    out.notes.push_back("grid_crossing " + (grid_crossing ? fmt(*grid_crossing) : std::string("none")));
    out.notes.push_back("bisection_crossing " + fmt(exact));
    out.plot = PlotData{"p", "value_over_n", normalized};
    return out;
}

void add_spin_diagnostics(CommandOutput &out, const std::string &state, StateRef psi) {
    const CollectiveOperators ops(psi.space());
    const auto means = ops.means(psi);
    double j2 = 0;
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        j2 += expectation(ops.j_squared(a), psi);
    }
    out.results.push_back(Json{{"kind", "diagnostics"},
                               {"state", state},
                               {"mean_jx", json_number(means[0])},
                               {"mean_jy", json_number(means[1])},
                               {"mean_jz", json_number(means[2])},
                               {"total_spin_squared", json_number(j2)},
                               {"mean_number", json_number(expectation(ops.number(), psi))}});
    out.notes.push_back(state + " total_spin_squared " + fmt(j2));
}

CommandOutput singlet_suite(const RunConfig &c) {
    const int pairs = require_n(c, 2, 1, 6, false);
    CommandOutput out;
    const PureState psi = singlet_chain(pairs);
    add_report(out, "singlet_chain", collective_uncertainty_criterion(psi));
    add_report(out, "singlet_chain",
               spin_squeezing_criterion(psi, Direction::along(Axis::kZ), Direction::along(Axis::kX),
                                        Direction::along(Axis::kY)));
    add_spin_diagnostics(out, "singlet_chain", psi);
    return out;
}

CommandOutput heisenberg(const RunConfig &c) {
    const int n = require_n(c, 4, 2, 7, false);
    const FockLatticeSpec lattice(n, 1);
    const GroundState gs = unit_filling_ground_state(heisenberg_hamiltonian(lattice), lattice);
    CommandOutput out;
    CriterionReport r = collective_uncertainty_criterion(gs.state);
    r.aux["energy"] = gs.energy;
    r.aux["gap"] = gs.gap;
    r.aux["degenerate"] = gs.degenerate ? std::string("true") : std::string("false");
    if (n == 2) {
        r.aux["singlet_fidelity"] = fidelity(gs.state, singlet_chain(1));
    }
    add_report(out, "heisenberg_ground_state", r);
    add_spin_diagnostics(out, "heisenberg_ground_state", gs.state);
    out.notes.push_back("energy " + fmt(gs.energy));
    return out;
}

CommandOutput moments_compare(const RunConfig &c) {
    const int n = require_n(c, 9, 2, 9, false);
    if (c.max_order < 1) {
        throw std::invalid_argument("moments-compare: --max-order must be >= 1");
    }
    const ChainSpec chain(n);
    const PureState cluster = cluster_state_via_phase_gate(chain);
    const DensityMatrix mixed = totally_mixed_state(n);
    const std::vector<Direction> axes = {Direction::along(Axis::kX), Direction::along(Axis::kY),
                                         Direction::along(Axis::kZ)};
    const MomentComparison cmp = moment_indistinguishability(cluster, mixed, axes, c.max_order);

    CommandOutput out;
    out.table.columns = {"comparison", "axis", "order", "a", "b", "difference"};
    for (const auto &row : cmp.rows) {
        Json j = to_json(row);
        j["kind"] = "moment";
        j["comparison"] = "cluster_vs_totally_mixed";
        out.results.push_back(std::move(j));
        out.table.add({std::string("cluster_vs_totally_mixed"), row.axis, static_cast<long long>(row.order), row.a,
                       row.b, row.difference});
    }
    out.results.push_back(Json{
        {"kind", "summary"},
        {"comparison", "cluster_vs_totally_mixed"},
        {"indistinguishable", cmp.indistinguishable},
        {"first_difference", cmp.first_difference ? to_json(*cmp.first_difference) : Json(nullptr)}});
    out.notes.push_back(std::string("cluster_vs_totally_mixed indistinguishable ") +
                        (cmp.indistinguishable ? "true" : "false"));

    if (n >= 4) {
        const DensityMatrix rho_s = moment_matching_separable_state(n);
        const CollectiveOperators ops(chain.space());
        const auto ma = ops.means(cluster);
        const auto mb = ops.means(rho_s);
        const auto aa = ops.anticommutators(cluster);
        const auto ab = ops.anticommutators(rho_s);
        const char *names = "xyz";
        double worst = 0;
        for (int k = 0; k < 3; ++k) {
            const std::string axis(1, names[k]);
            const double d = std::abs(ma[k] - mb[k]);
            worst = std::max(worst, d);
            out.results.push_back(Json{{"kind", "first_moment"},
                                       {"comparison", "cluster_vs_moment_matching_separable"},
                                       {"axis", axis},
                                       {"a", json_number(ma[k])},
                                       {"b", json_number(mb[k])},
                                       {"difference", json_number(d)}});
            out.table.add({std::string("cluster_vs_moment_matching_separable"), axis, 1LL, ma[k], mb[k], d});
        }
        for (int k = 0; k < 3; ++k) {
            for (int l = 0; l < 3; ++l) {
                const std::string pair = std::string(1, names[k]) + names[l];
                const double d = std::abs(aa[k][l] - ab[k][l]);
                worst = std::max(worst, d);
                out.results.push_back(Json{{"kind", "anticommutator"},
                                           {"comparison", "cluster_vs_moment_matching_separable"},
                                           {"axes", pair},
                                           {"a", json_number(aa[k][l])},
                                           {"b", json_number(ab[k][l])},
                                           {"difference", json_number(d)}});
                out.table.add({std::string("cluster_vs_moment_matching_separable"), pair, 2LL, aa[k][l], ab[k][l], d});
            }
        }
        out.results.push_back(Json{{"kind", "summary"},
                                   {"comparison", "cluster_vs_moment_matching_separable"},
                                   {"max_difference", json_number(worst)}});
        out.notes.push_back("cluster_vs_moment_matching_separable max_difference " + fmt(worst));
    }
    return out;
}

CommandOutput pulse(const RunConfig &c) {
    const int n = require_n(c, 6, 2, 10, false);
    const ChainSpec chain(n);
    const PulseParams initial{c.params[0], c.params[1], c.params[2]};
    CommandOutput out;

    auto emit = [&](const std::string &label, const PulseParams &p) {
        const PureState psi = pulse_state(chain, p);
        CriterionReport r = collective_uncertainty_criterion(psi);
        const double ratio = violation_ratio(psi);
        r.aux["theta_xx"] = p.theta_xx;
        r.aux["theta_yy"] = p.theta_yy;
        r.aux["theta_z"] = p.theta_z;
        r.aux["violation_ratio"] = ratio;
        add_report(out, label, r);
        out.notes.push_back(label + " violation_ratio " + fmt(ratio));
    };

    emit("pulse", initial);
    if (c.optimize) {
        if (c.budget < 1) {
            throw std::invalid_argument("pulse: --budget must be >= 1");
        }
        std::ostringstream trace;
        OptimizerOptions opts;
        opts.budget = c.budget;
        opts.seed = c.seed;
        opts.trace = &trace;
        const OptimizerResult res = optimize_pulse(chain, initial, opts);
        emit("optimized_pulse", res.params);
        out.results.push_back(Json{{"kind", "optimizer"},
                                   {"evaluations", res.evaluations},
                                   {"initial_ratio", json_number(res.initial_ratio)},
                                   {"ratio", json_number(res.ratio)},
                                   {"params", Json::array({json_number(res.params.theta_xx),
                                                           json_number(res.params.theta_yy),
                                                           json_number(res.params.theta_z)})}});
        out.trace = trace.str();
    }
    return out;
}

CommandOutput pairwise(const RunConfig &c) {
    const int n = require_n(c, 4, 4, 8, true);
    CommandOutput out;
    out.table.columns = {"channel", "quantity", "value"};
    auto row = [&](const std::string &channel, const std::string &quantity, std::optional<double> v) {
        out.table.add({channel, quantity, v ? Cell(*v) : Cell(std::string("none"))});
        out.results.push_back(Json{{"kind", "threshold"},
                                   {"channel", channel},
                                   {"quantity", quantity},
                                   {"value", v ? json_number(*v) : Json(nullptr)}});
    };
    for (NoiseKind kind : {NoiseKind::kPhaseFlip, NoiseKind::kDepolarizing}) {
        const std::string name = noise_name(kind);
        const double p_witness = witness_crossing(n, kind, 1e-9);
        const PairwiseThreshold pair = pairwise_threshold(n, kind);
        const PairwiseThreshold traced = pairwise_threshold(n, kind, PairReduction::kTraceOut);
        row(name, "witness_crossing", p_witness);
        row(name, "pairwise_threshold", pair.p_crit);
        row(name, "pairwise_threshold_trace_out", traced.p_crit);
        row(name, "pair_negativity_at_p1", pair.negativity_at_one);
        if (pair.p_crit) {
            const LifetimeComparison life = lifetime_comparison(1.0, p_witness, *pair.p_crit, kind);
            row(name, "t_witness", life.t_witness);
            row(name, "t_pairwise", life.t_pairwise);
            row(name, "lifetime_ratio", life.ratio);
        }
        if (kind == NoiseKind::kPhaseFlip) {
            out.plot = PlotData{"p", "pair_negativity", pair.scan};
        }
    }
    return out;
}

using Handler = std::function<CommandOutput(const RunConfig &)>;

const std::map<std::string, Handler> &handlers() {
    static const std::map<std::string, Handler> table = {
        {"cluster-witness", cluster_witness}, {"decoherence-scan", decoherence_scan},
        {"singlet-suite", singlet_suite},     {"heisenberg", heisenberg},
        {"moments-compare", moments_compare}, {"pulse", pulse},
        {"pairwise-threshold", pairwise},
    };
    return table;
}

void write_document(std::ostream &os, const RunConfig &config, const CommandOutput &result, std::ostream &err) {
    if (config.format == Format::kJson) {
        os << make_document(config.command, config.to_json(), result.results).dump(2) << '\n';
        return;
    }
    write_csv(os, result.table);
    for (const auto &note : result.notes) {
        err << "# " << note << '\n';
    }
}

}  // namespace

Json RunConfig::to_json() const {
    Json j{{"n", n ? Json(*n) : Json(nullptr)},
           {"p_min", p_min},
           {"p_max", p_max},
           {"steps", steps},
           {"max_order", max_order},
           {"params", Json::array({params[0], params[1], params[2]})},
           {"optimize", optimize},
           {"budget", budget},
           {"seed", seed},
           {"format", format == Format::kJson ? "json" : "csv"}};
    return j;
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &[name, h] : handlers()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

CommandOutput run_command(const RunConfig &config) {
    const auto it = handlers().find(config.command);
    if (it == handlers().end()) {
        throw std::invalid_argument("unknown command '" + config.command + "'");
    }
    return it->second(config);
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app("Entanglement criteria for qubit chains and two-mode lattices", "qlatwit");
    RunConfig config;
    int n = 0;
    std::vector<double> params;
    std::string format = "json";

    app.add_option("command", config.command, "Experiment to run")
        ->required()
        ->check(CLI::IsMember(command_names()));
    auto *n_opt = app.add_option("--n", n, "Number of sites (pairs for singlet-suite)");
    app.add_option("--p-min", config.p_min, "Smallest mixing weight of the scan");
    app.add_option("--p-max", config.p_max, "Largest mixing weight of the scan");
    app.add_option("--steps", config.steps, "Number of grid points");
    app.add_option("--max-order", config.max_order, "Highest moment order");
    app.add_option("--params", params, "Pulse angles theta_xx,theta_yy,theta_z")->delimiter(',')->expected(3);
    app.add_flag("--optimize", config.optimize, "Search for a better pulse");
    app.add_option("--budget", config.budget, "Objective evaluations for the search");
    app.add_option("--seed", config.seed, "Seed for the search restarts");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", config.out, "Write the document here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "qlatwit: " << e.what() << '\n';
        return 2;
    }
    if (n_opt->count() > 0) {
        config.n = n;
    }
    if (!params.empty()) {
        std::copy(params.begin(), params.end(), config.params.begin());
    }
    config.format = format == "csv" ? Format::kCsv : Format::kJson;

    CommandOutput result;
    try {
        result = run_command(config);
    } catch (const DimensionCapError &e) {
        err << "qlatwit: " << e.what() << " (raise QLATWIT_DIM_CAP to allow it)\n";
        return 3;
    } catch (const std::invalid_argument &e) {
        err << "qlatwit: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range &e) {
        err << "qlatwit: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "qlatwit: " << config.command << " failed: " << e.what() << '\n';
        return 1;
    }

    if (config.out.empty()) {
        write_document(out, config, result, err);
        return 0;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
        err << "qlatwit: cannot open " << config.out << " for writing\n";
        return 1;
    }
    write_document(file, config, result, err);
    if (result.plot) {
        std::ofstream plot(config.out + ".dat", std::ios::binary);
        write_plot(plot, result.plot->x_label, result.plot->y_label, result.plot->points);
    }
    if (!result.trace.empty()) {
        std::ofstream trace(config.out + ".trace.jsonl", std::ios::binary);
        trace << result.trace;
    }
    if (!file) {
        err << "qlatwit: write to " << config.out << " failed\n";
        return 1;
    }
    return 0;
}

}  // namespace qlatwit::cli
