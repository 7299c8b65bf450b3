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

// Single-qubit decoherence channels and the cluster-state decoherence
// experiment.
//
//   phase flip:   rho -> p rho + (1-p) Z rho Z
//   depolarizing: rho -> p rho + (1-p) (X rho X + Y rho Y + Z rho Z)/3
//
// The mixing weight p is tied to a decay rate kappa and a waiting time t by
//   phase flip:   p(t) = (1 + exp(-kappa t))/2
//   depolarizing: p(t) = (1 + 3 exp(-kappa t))/4
// so that in both cases the surviving Bloch-vector component is exp(-kappa t).

#ifndef QLATWIT_CHANNELS_H
#define QLATWIT_CHANNELS_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlatwit/criteria.h"
#include "qlatwit/qcore.h"

namespace qlatwit {

enum class NoiseKind { kPhaseFlip, kDepolarizing };

std::string noise_name(NoiseKind kind);
/// Human-readable Kraus form, attached to reports.
std::string noise_convention(NoiseKind kind);

/// Mixing weight reached at t -> infinity (1/2 or 1/4).
double fully_mixed_weight(NoiseKind kind);
double mixing_weight(NoiseKind kind, double kappa, double t);
double time_for_weight(NoiseKind kind, double kappa, double p);

struct DecoherenceModel {
    NoiseKind kind = NoiseKind::kPhaseFlip;
    double p = 1;
    double rate = 1;
    double time = 0;

    static DecoherenceModel from_weight(NoiseKind kind, double p);
    static DecoherenceModel from_rate(NoiseKind kind, double kappa, double t);
};

DensityMatrix phase_flip(const DensityMatrix &rho, int site, double p);
DensityMatrix depolarizing(const DensityMatrix &rho, int site, double p);
DensityMatrix apply_channel(const DensityMatrix &rho, int site, NoiseKind kind, double p);

/// The channel on every qubit, in `order` (1-based sites) when given.
DensityMatrix apply_all_sites(const DecoherenceModel &model, const DensityMatrix &rho,
                              std::optional<std::span<const int>> order = std::nullopt);

/// |+>^N -> U_PG -> noise on every site -> U_PG, then <sum_k sigma_x^(k)> against N/2.
CriterionReport decoherence_experiment(int n_sites, double p, NoiseKind kind = NoiseKind::kPhaseFlip);

/// The noisy cluster state itself (the state just before the second U_PG).
DensityMatrix noisy_cluster_state(int n_sites, double p, NoiseKind kind);

/// Weight p at which the decoherence experiment hits the witness bound.
double witness_crossing(int n_sites, NoiseKind kind = NoiseKind::kPhaseFlip, double precision = 1e-9);

enum class PairReduction {
    /// Measure the outer neighbours k-1 and k+2 in the z basis (outcome |0>) and keep (k, k+1).
    kMeasureNeighborsZ,
    /// Plain partial trace down to (k, k+1).
    kTraceOut,
};

std::string reduction_name(PairReduction reduction);

/// Negativity of the reduced state of sites (first, first+1) of the noisy cluster state.
double pair_negativity(int n_sites, double p, NoiseKind kind = NoiseKind::kPhaseFlip,
                       PairReduction reduction = PairReduction::kMeasureNeighborsZ, int first = 2);

struct PairwiseThreshold {
    /// Empty when the reduction is separable already at p = 1.
    std::optional<double> p_crit;
    double negativity_at_one = 0;
    bool monotone = true;
    std::vector<std::pair<double, double>> scan;  // (p, negativity), p descending from 1
};

PairwiseThreshold pairwise_threshold(int n_sites, NoiseKind kind = NoiseKind::kPhaseFlip,
                                     PairReduction reduction = PairReduction::kMeasureNeighborsZ,
                                     double precision = 1e-4);

struct LifetimeComparison {
    double t_witness;
    double t_pairwise;
    double ratio;
};

LifetimeComparison lifetime_comparison(double kappa, double p_witness, double p_pairwise,
                                       NoiseKind kind = NoiseKind::kPhaseFlip);

}  // namespace qlatwit

#endif
