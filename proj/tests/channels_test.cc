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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "oracles.h"
#include "qlatwit/sampling.h"

namespace qlatwit {
namespace {

DensityMatrix random_density(const HilbertSpace &space, Rng &rng) {
    // Mixture of a few Haar states: full rank in general, not a product.
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    std::uniform_real_distribution<double> u(0.1, 1.0);
    double total = 0;
    for (int t = 0; t < 3; ++t) {
        const double w = u(rng);
        const Vector v = haar_state(space, rng).amplitudes();
        m += w * v * v.adjoint();
        total += w;
    }
    return DensityMatrix(space, m / total);
}

void expect_valid(const DensityMatrix &rho) {
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_LT(oracle::max_abs(rho.matrix() - rho.matrix().adjoint()), 1e-13);
    EXPECT_GE(oracle::jacobi_eigenvalues(rho.matrix()).front(), -1e-10);
}

DensityMatrix cluster_density(int n) { return pure_to_density(cluster_state(ClusterSpec::uniform(n))); }

TEST(PhaseFlip, Examples) {
    Rng rng(1);
    const DensityMatrix rho = random_density(HilbertSpace::qubits(3), rng);
    EXPECT_LT(oracle::max_abs(phase_flip(rho, 2, 1.0).matrix() - rho.matrix()), 1e-15);

    Vector plus(2);
    plus << std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2;
    const DensityMatrix p = pure_to_density(PureState(HilbertSpace::qubits(1), plus));
    EXPECT_LT(oracle::max_abs(phase_flip(p, 1, 0.5).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);

    // Oracle: p rho + (1 - p) Z rho Z with Z embedded by Kronecker products.
    const Matrix z = oracle::pauli_word("izi");
    const Matrix expected = 0.3 * rho.matrix() + 0.7 * z * rho.matrix() * z;
    EXPECT_LT(oracle::max_abs(phase_flip(rho, 2, 0.3).matrix() - expected), 1e-14);

    EXPECT_THROW(phase_flip(rho, 2, 1.2), std::invalid_argument);
    EXPECT_THROW(phase_flip(rho, 4, 0.5), std::out_of_range);
}

TEST(Depolarizing, Examples) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_density(HilbertSpace::qubits(1), rng);
        EXPECT_LT(oracle::max_abs(depolarizing(rho, 1, 1.0).matrix() - rho.matrix()), 1e-15);
        EXPECT_LT(oracle::max_abs(depolarizing(rho, 1, 0.25).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-14);
    }
    const DensityMatrix rho = random_density(HilbertSpace::qubits(2), rng);
    const Matrix x = oracle::pauli_word("xi"), y = oracle::pauli_word("yi"), z = oracle::pauli_word("zi");
    const Matrix &r = rho.matrix();
    const Matrix expected = 0.6 * r + 0.4 * (x * r * x + y * r * y + z * r * z) / 3.0;
    EXPECT_LT(oracle::max_abs(depolarizing(rho, 1, 0.6).matrix() - expected), 1e-14);
    EXPECT_THROW(depolarizing(rho, 1, -0.1), std::invalid_argument);
}

TEST(Channels, OutputsStayValid) {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = random_density(HilbertSpace::qubits(3), rng);
        for (double p : {0.0, 0.25, 0.5, 0.8, 1.0}) {
            for (NoiseKind kind : {NoiseKind::kPhaseFlip, NoiseKind::kDepolarizing}) {
                expect_valid(apply_channel(rho, 1 + trial % 3, kind, p));
                expect_valid(apply_all_sites(DecoherenceModel::from_weight(kind, p), rho));
            }
        }
    }
}

TEST(Channels, RejectFockSites) {
    const DensityMatrix rho = pure_to_density(singlet_chain(1));
    EXPECT_THROW(phase_flip(rho, 1, 0.5), std::invalid_argument);
}

TEST(ApplyAllSites, IdentityAtOneAndOrderIndependent) {
    Rng rng(4);
    const DensityMatrix rho = random_density(HilbertSpace::qubits(4), rng);
    for (NoiseKind kind : {NoiseKind::kPhaseFlip, NoiseKind::kDepolarizing}) {
        EXPECT_LT(oracle::max_abs(apply_all_sites(DecoherenceModel::from_weight(kind, 1.0), rho).matrix() -
                                  rho.matrix()),
                  1e-15);
        const auto model = DecoherenceModel::from_weight(kind, 0.7);
        const std::array<int, 4> forward{1, 2, 3, 4}, shuffled{3, 1, 4, 2};
        const Matrix a = apply_all_sites(model, rho, std::span<const int>(forward)).matrix();
        const Matrix b = apply_all_sites(model, rho, std::span<const int>(shuffled)).matrix();
        EXPECT_LT(oracle::max_abs(a - b), 1e-12);
        EXPECT_LT(oracle::max_abs(a - apply_all_sites(model, rho).matrix()), 1e-12);
    }
    const std::array<int, 4> repeated{1, 1, 2, 3};
    EXPECT_THROW(apply_all_sites(DecoherenceModel::from_weight(NoiseKind::kPhaseFlip, 0.7), rho,
                                 std::span<const int>(repeated)),
                 std::invalid_argument);
}

TEST(ApplyAllSites, NoisyClusterWitness) {
    const DensityMatrix noisy =
        apply_all_sites(DecoherenceModel::from_weight(NoiseKind::kPhaseFlip, 0.9), cluster_density(4));
    EXPECT_NEAR(witness_criterion(noisy).value, 4 * (2 * 0.9 - 1), 1e-12);
}

TEST(DecoherenceModel, WeightFromRate) {
    const auto m = DecoherenceModel::from_rate(NoiseKind::kPhaseFlip, 2.0, 0.3);
    EXPECT_NEAR(m.p, (1 + std::exp(-0.6)) / 2, 1e-15);
    EXPECT_NEAR(mixing_weight(NoiseKind::kPhaseFlip, 1.0, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(mixing_weight(NoiseKind::kPhaseFlip, 1.0, 50.0), 0.5, 1e-15);
    EXPECT_NEAR(mixing_weight(NoiseKind::kDepolarizing, 1.0, 50.0), 0.25, 1e-15);
    EXPECT_NEAR(time_for_weight(NoiseKind::kPhaseFlip, 1.0, 0.75), std::numbers::ln2, 1e-15);
    EXPECT_THROW(time_for_weight(NoiseKind::kPhaseFlip, 1.0, 0.4), std::invalid_argument);
}

TEST(DecoherenceExperiment, Examples) {
    EXPECT_NEAR(decoherence_experiment(6, 1.0).value, 6.0, 1e-12);
    const auto edge = decoherence_experiment(6, 0.75);
    EXPECT_NEAR(edge.value, 3.0, 1e-12);
    EXPECT_FALSE(edge.violated);
    EXPECT_NEAR(decoherence_experiment(6, 0.6).value, 1.2, 1e-12);
}

TEST(DecoherenceExperiment, LinearLawAcrossGrid) {
    for (int n : {4, 6, 8}) {
        for (int i = 0; i <= 5; ++i) {
            const double p = 0.5 + 0.1 * i;
            const auto r = decoherence_experiment(n, p);
            EXPECT_NEAR(r.value / n, 2 * p - 1, 1e-9) << n << " " << p;
            EXPECT_EQ(r.bound, n / 2.0);
        }
    }
}

TEST(DecoherenceExperiment, WitnessCrossing) {
    for (int n : {4, 6}) EXPECT_NEAR(witness_crossing(n), 0.75, 1e-6);
    const double depol = witness_crossing(4, NoiseKind::kDepolarizing);
    EXPECT_GT(depol, 0.75);
    EXPECT_LT(depol, 1.0);
}

TEST(FlipIdentities, SingleAndDoubleFlips) {
    for (int n : {4, 6, 8}) {
        const ChainSpec chain(n);
        const DensityMatrix cl = cluster_density(n);
        for (int k = 1; k <= n; ++k) {
            const Matrix zk = pauli(chain, k, Axis::kZ).matrix();
            const DensityMatrix one = DensityMatrix::trusted(chain.space(), zk * cl.matrix() * zk);
            EXPECT_NEAR(witness_criterion(one).value, n - 2, 1e-9) << n << " " << k;
            for (int l = k + 1; l <= n; l += 2) {
                const Matrix zl = pauli(chain, l, Axis::kZ).matrix();
                const Matrix both = zl * zk;
                const DensityMatrix two = DensityMatrix::trusted(chain.space(), both * cl.matrix() * both.adjoint());
                EXPECT_NEAR(witness_criterion(two).value, n - 4, 1e-9) << n << " " << k << " " << l;
            }
        }
    }
}

TEST(PairwiseThreshold, CriticalWeightNearSeventyOne) {
    for (int n : {4, 6}) {
        const auto t = pairwise_threshold(n);
        ASSERT_TRUE(t.p_crit.has_value()) << n;
        EXPECT_NEAR(*t.p_crit, 0.71, 0.01) << n;
        EXPECT_GT(t.negativity_at_one, 0.0);
        EXPECT_TRUE(t.monotone);
        // Grid scan oracle: negativity never increases as p decreases from 1.
        for (std::size_t i = 1; i < t.scan.size(); ++i) {
            EXPECT_LT(t.scan[i].first, t.scan[i - 1].first);
            EXPECT_LE(t.scan[i].second, t.scan[i - 1].second + 1e-12);
        }
    }
    EXPECT_THROW(pairwise_threshold(5), std::invalid_argument);
}

TEST(PairwiseThreshold, NegativityAtOneMatchesDirectEvaluation) {
    // Direct oracle at p = 1: project the outer neighbours of sites (2, 3) onto |0>
    // and take the negativity of the normalized pair.
    const int n = 4;
    const Vector psi = cluster_state(ClusterSpec::uniform(n)).amplitudes();
    Vector pair = Vector::Zero(4);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const auto d = oracle::digits(i, {2, 2, 2, 2});
        if (d[0] == 0 && d[3] == 0) pair(d[1] * 2 + d[2]) += psi(i);
    }
    pair.normalize();
    const DensityMatrix rho(HilbertSpace::qubits(2), pair * pair.adjoint());
    const std::array<int, 1> first{1};
    EXPECT_NEAR(pair_negativity(n, 1.0), negativity(rho, first), 1e-12);
}

TEST(PairwiseThreshold, PlainPartialTraceHasNoCrossing) {
    const auto t = pairwise_threshold(4, NoiseKind::kPhaseFlip, PairReduction::kTraceOut);
    EXPECT_FALSE(t.p_crit.has_value());
    EXPECT_NEAR(t.negativity_at_one, 0.0, 1e-12);
}

TEST(LifetimeComparison, Examples) {
    const auto a = lifetime_comparison(1.0, 0.75, 0.71);
    EXPECT_NEAR(a.t_witness, std::numbers::ln2, 1e-12);
    EXPECT_NEAR(a.t_pairwise, -std::log(0.42), 1e-12);
    EXPECT_NEAR(a.ratio, 0.80, 0.01);
    const auto b = lifetime_comparison(2.0, 0.75, 0.71);
    EXPECT_NEAR(b.t_witness, a.t_witness / 2, 1e-12);
    EXPECT_NEAR(b.t_pairwise, a.t_pairwise / 2, 1e-12);
    EXPECT_NEAR(b.ratio, a.ratio, 1e-12);
    EXPECT_NEAR(lifetime_comparison(1.0, 0.75, 0.75).ratio, 1.0, 1e-12);
    EXPECT_THROW(lifetime_comparison(0.0, 0.75, 0.71), std::invalid_argument);
}

}  // namespace
}  // namespace qlatwit
