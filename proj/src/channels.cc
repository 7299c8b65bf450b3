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

#include "qlatwit/channels.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qlatwit/kernels.h"
#include "qlatwit/spinchain.h"

namespace qlatwit {

namespace {

void require_weight(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": p must lie in [0, 1]");
    }
}

std::vector<int> qubit_dims(const DensityMatrix &rho, const char *what) {
    if (!rho.space().all_qubits()) {
        throw std::invalid_argument(std::string(what) + ": channel acts on qubit sites only");
    }
    return rho.space().site_dims();
}

void require_site(const DensityMatrix &rho, int site, const char *what) {
    if (site < 1 || site > static_cast<int>(rho.space().num_sites())) {
        throw std::out_of_range(std::string(what) + ": site out of range");
    }
}

Matrix conjugated(const Matrix &rho, std::span<const int> dims, int site, Axis axis) {
    Matrix out = rho;
    kernels::conjugate_local(out, dims, site - 1, pauli_matrix(axis));
    return out;
}

void check_bisection_args(int n_sites) {
    const ChainSpec chain(n_sites);
    chain.require_even("decoherence experiment");
    check_dim_cap(chain.space().dim(), "decoherence experiment");
}

}  // namespace

std::string noise_name(NoiseKind kind) { return kind == NoiseKind::kPhaseFlip ? "phase_flip" : "depolarizing"; }

std::string noise_convention(NoiseKind kind) {
    return kind == NoiseKind::kPhaseFlip ? "p rho + (1-p) Z rho Z"
                                         : "p rho + (1-p) (X rho X + Y rho Y + Z rho Z)/3";
}

double fully_mixed_weight(NoiseKind kind) { return kind == NoiseKind::kPhaseFlip ? 0.5 : 0.25; }

double mixing_weight(NoiseKind kind, double kappa, double t) {
    if (!(kappa > 0) || !(t >= 0)) {
        throw std::invalid_argument("mixing_weight: need kappa > 0 and t >= 0");
    }
    const double floor = fully_mixed_weight(kind);
    return floor + (1 - floor) * std::exp(-kappa * t);
}

double time_for_weight(NoiseKind kind, double kappa, double p) {
    const double floor = fully_mixed_weight(kind);
    if (!(kappa > 0)) {
        throw std::invalid_argument("time_for_weight: kappa must be positive");
    }
    if (!(p > floor && p <= 1)) {
        throw std::invalid_argument("time_for_weight: p outside the reachable range");
    }
    return -std::log((p - floor) / (1 - floor)) / kappa;
}

DecoherenceModel DecoherenceModel::from_weight(NoiseKind kind, double p) {
    require_weight(p, "DecoherenceModel");
    DecoherenceModel m;
    m.kind = kind;
    m.p = p;
    m.time = p > fully_mixed_weight(kind) ? time_for_weight(kind, 1.0, p) : INFINITY;
    return m;
}

DecoherenceModel DecoherenceModel::from_rate(NoiseKind kind, double kappa, double t) {
    DecoherenceModel m;
    m.kind = kind;
    m.p = mixing_weight(kind, kappa, t);
    m.rate = kappa;
    m.time = t;
    return m;
}

DensityMatrix phase_flip(const DensityMatrix &rho, int site, double p) {
    require_weight(p, "phase_flip");
    require_site(rho, site, "phase_flip");
    const auto dims = qubit_dims(rho, "phase_flip");
    Matrix out = p * rho.matrix() + (1 - p) * conjugated(rho.matrix(), dims, site, Axis::kZ);
    return DensityMatrix::trusted(rho.space(), std::move(out));
}

DensityMatrix depolarizing(const DensityMatrix &rho, int site, double p) {
    require_weight(p, "depolarizing");
    require_site(rho, site, "depolarizing");
    const auto dims = qubit_dims(rho, "depolarizing");
    Matrix out = p * rho.matrix();
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        out += ((1 - p) / 3) * conjugated(rho.matrix(), dims, site, a);
    }
    return DensityMatrix::trusted(rho.space(), std::move(out));
}

DensityMatrix apply_channel(const DensityMatrix &rho, int site, NoiseKind kind, double p) {
    return kind == NoiseKind::kPhaseFlip ? phase_flip(rho, site, p) : depolarizing(rho, site, p);
}

DensityMatrix apply_all_sites(const DecoherenceModel &model, const DensityMatrix &rho,
                              std::optional<std::span<const int>> order) {
    check_dim_cap(rho.dim(), "apply_all_sites");
    const int n = static_cast<int>(rho.space().num_sites());
    std::vector<int> sites(n);
    std::iota(sites.begin(), sites.end(), 1);
    if (order) {
        std::vector<int> sorted(order->begin(), order->end());
        std::sort(sorted.begin(), sorted.end());
        if (sorted != sites) {
            throw std::invalid_argument("apply_all_sites: order must be a permutation of the sites");
        }
        sites.assign(order->begin(), order->end());
    }
    DensityMatrix out = rho;
    for (int k : sites) {
        out = apply_channel(out, k, model.kind, model.p);
    }
    return out;
}

DensityMatrix noisy_cluster_state(int n_sites, double p, NoiseKind kind) {
    const ChainSpec chain(n_sites);
    check_dim_cap(chain.space().dim(), "noisy_cluster_state");
    const DensityMatrix cluster = pure_to_density(cluster_state_via_phase_gate(chain));
    return apply_all_sites(DecoherenceModel::from_weight(kind, p), cluster);
}

CriterionReport decoherence_experiment(int n_sites, double p, NoiseKind kind) {
    const ChainSpec chain(n_sites);
    chain.require_even("decoherence_experiment");
    require_weight(p, "decoherence_experiment");
    const DensityMatrix noisy = noisy_cluster_state(n_sites, p, kind);
    Matrix restored = noisy.matrix();
    kernels::conjugate_diagonal(restored, phase_gate_phases(chain));
    const DensityMatrix final_state = DensityMatrix::trusted(chain.space(), std::move(restored));

    double value = 0;
    for (int k = 1; k <= n_sites; ++k) {
        const std::pair<int, Axis> x{k, Axis::kX};
        value += PauliString(chain, std::span(&x, 1)).expectation(final_state);
    }
    auto r = CriterionReport::make("witness", value, n_sites / 2.0, BoundDirection::kUpper);
    r.aux["n_sites"] = static_cast<double>(n_sites);
    r.aux["p"] = p;
    r.aux["channel"] = noise_name(kind);
    r.aux["kraus"] = noise_convention(kind);
    return r;
}

double witness_crossing(int n_sites, NoiseKind kind, double precision) {
    check_bisection_args(n_sites);
    // Witness value grows with p; find where it meets N/2.
    double lo = fully_mixed_weight(kind);
    double hi = 1.0;
    auto excess = [&](double p) {
        const CriterionReport r = decoherence_experiment(n_sites, p, kind);
        return r.value - r.bound;
    };
    if (excess(lo) >= 0 || excess(hi) <= 0) {
        throw std::domain_error("witness_crossing: bound not crossed on the weight interval");
    }
    while (hi - lo > precision) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string reduction_name(PairReduction reduction) {
    return reduction == PairReduction::kMeasureNeighborsZ ? "measure_neighbors_z" : "trace_out";
}

double pair_negativity(int n_sites, double p, NoiseKind kind, PairReduction reduction, int first) {
    const ChainSpec chain(n_sites);
    if (first < 1 || first + 1 > n_sites) {
        throw std::out_of_range("pair_negativity: pair outside the chain");
    }
    const DensityMatrix noisy = noisy_cluster_state(n_sites, p, kind);
    Matrix rho = noisy.matrix();
    if (reduction == PairReduction::kMeasureNeighborsZ) {
        const auto dims = noisy.space().site_dims();
        Matrix project_up = Matrix::Zero(2, 2);
        project_up(0, 0) = 1;
        for (int k : {first - 1, first + 2}) {
            if (k >= 1 && k <= n_sites) {
                kernels::conjugate_local(rho, dims, k - 1, project_up);
            }
        }
        const double prob = rho.trace().real();
        if (prob < 1e-12) {
            throw std::domain_error("pair_negativity: measurement outcome has zero probability");
        }
        rho /= prob;
    }
    const std::array<int, 2> keep{first, first + 1};
    const DensityMatrix pair = partial_trace(DensityMatrix::trusted(noisy.space(), std::move(rho)), keep);
    const std::array<int, 1> half{1};
    return negativity(pair, half);
}

PairwiseThreshold pairwise_threshold(int n_sites, NoiseKind kind, PairReduction reduction, double precision) {
    const ChainSpec chain(n_sites);
    chain.require_even("pairwise_threshold");
    if (n_sites < 4) {
        throw std::invalid_argument("pairwise_threshold: needs an interior pair, n_sites >= 4");
    }
    check_dim_cap(chain.space().dim(), "pairwise_threshold");
    auto neg = [&](double p) { return pair_negativity(n_sites, p, kind, reduction); };

    PairwiseThreshold out;
    out.negativity_at_one = neg(1.0);
    const double floor = fully_mixed_weight(kind);
    constexpr int kScanPoints = 21;
    for (int i = 0; i < kScanPoints; ++i) {
        const double p = 1.0 - (1.0 - floor) * i / (kScanPoints - 1);
        const double n = neg(p);
        if (!out.scan.empty() && n > out.scan.back().second + 1e-12) {
            out.monotone = false;
        }
        out.scan.emplace_back(p, n);
    }
    if (out.negativity_at_one <= kNegativityTolerance) {
        return out;
    }
    double lo = floor;
    double hi = 1.0;
    while (hi - lo > precision) {
        const double mid = 0.5 * (lo + hi);
        (neg(mid) > kNegativityTolerance ? hi : lo) = mid;
    }
    out.p_crit = 0.5 * (lo + hi);
    return out;
}

LifetimeComparison lifetime_comparison(double kappa, double p_witness, double p_pairwise, NoiseKind kind) {
    if (!(kappa > 0)) {
        throw std::invalid_argument("lifetime_comparison: kappa must be positive");
    }
    LifetimeComparison out;
    out.t_witness = time_for_weight(kind, kappa, p_witness);
    out.t_pairwise = time_for_weight(kind, kappa, p_pairwise);
    out.ratio = out.t_witness / out.t_pairwise;
    return out;
}

}  // namespace qlatwit
