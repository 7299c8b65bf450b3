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

#include "qlatwit/bosonic.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "oracles.h"
#include "qlatwit/sampling.h"

namespace qlatwit {
namespace {

const Complex kI(0, 1);

Vector site_ket(const SiteFockSpace &s, int na, int nb) { return Vector::Unit(s.dim(), s.index_of(na, nb)); }

Matrix comm(const Matrix &a, const Matrix &b) { return a * b - b * a; }

TEST(SiteFockSpace, BasisOrder) {
    const SiteFockSpace s(2);
    ASSERT_EQ(s.dim(), 6);
    const std::array<std::pair<int, int>, 6> expected{{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}};
    for (int i = 0; i < 6; ++i) {
        EXPECT_EQ(s.occupation(i), expected[i]);
        EXPECT_EQ(s.index_of(expected[i].first, expected[i].second), i);
    }
    EXPECT_THROW(SiteFockSpace(0), std::invalid_argument);
    EXPECT_THROW(s.index_of(2, 1), std::out_of_range);
    for (int c = 1; c <= 5; ++c) EXPECT_EQ(SiteFockSpace(c).dim(), (c + 1) * (c + 2) / 2);
}

TEST(AngularMomentumLabel, FromOccupation) {
    const auto l = AngularMomentumLabel::from_occupation(2, 1);
    EXPECT_DOUBLE_EQ(l.j, 1.5);
    EXPECT_DOUBLE_EQ(l.z, 0.5);
}

TEST(ModeOperator, LadderActions) {
    const SiteFockSpace s(2);
    const Matrix a = mode_operator(s, Mode::kA, Ladder::kAnnihilate).matrix();
    const Matrix ad = mode_operator(s, Mode::kA, Ladder::kCreate).matrix();
    EXPECT_LT((a * site_ket(s, 1, 0) - site_ket(s, 0, 0)).norm(), 1e-15);
    EXPECT_LT((ad * site_ket(s, 0, 0) - site_ket(s, 1, 0)).norm(), 1e-15);
    EXPECT_LT((ad * site_ket(s, 1, 0) - std::sqrt(2.0) * site_ket(s, 2, 0)).norm(), 1e-15);
    EXPECT_LT((ad * site_ket(s, 1, 1)).norm(), 1e-15);  // truncated
    EXPECT_LT(oracle::max_abs(ad - a.adjoint()), 1e-15);
}

TEST(ModeOperator, CanonicalCommutatorBelowCutoff) {
    for (int cutoff : {1, 2, 3}) {
        const SiteFockSpace s(cutoff);
        for (Mode m : {Mode::kA, Mode::kB}) {
            const Matrix a = mode_operator(s, m, Ladder::kAnnihilate).matrix();
            const Matrix ad = mode_operator(s, m, Ladder::kCreate).matrix();
            const Matrix c = comm(a, ad);
            for (int i = 0; i < s.dim(); ++i) {
                auto [na, nb] = s.occupation(i);
                if (na + nb < cutoff) {
                    EXPECT_LT((c * Vector::Unit(s.dim(), i) - Vector::Unit(s.dim(), i)).norm(), 1e-14);
                }
            }
        }
    }
}

TEST(Schwinger, Examples) {
    const SiteFockSpace s(2);
    const Matrix jz = schwinger_j(s, Axis::kZ).matrix();
    const Matrix jx = schwinger_j(s, Axis::kX).matrix();
    const Matrix jy = schwinger_j(s, Axis::kY).matrix();
    EXPECT_LT((jz * site_ket(s, 1, 0) - 0.5 * site_ket(s, 1, 0)).norm(), 1e-15);
    EXPECT_LT((jx * site_ket(s, 1, 0) - 0.5 * site_ket(s, 0, 1)).norm(), 1e-15);
    EXPECT_LT(oracle::max_abs(comm(jx, jy) - kI * jz), 1e-14);
    EXPECT_LT(oracle::max_abs(comm(jy, jz) - kI * jx), 1e-14);
    EXPECT_LT(oracle::max_abs(comm(jz, jx) - kI * jy), 1e-14);
}

TEST(Schwinger, SingleParticleSectorIsHalfPauli) {
    const SiteFockSpace s(1);
    const std::array<int, 2> idx{s.index_of(1, 0), s.index_of(0, 1)};
    const char names[3] = {'x', 'y', 'z'};
    for (int a = 0; a < 3; ++a) {
        const Matrix j = schwinger_j(s, static_cast<Axis>(a)).matrix();
        const Matrix p = oracle::pauli(names[a]) / 2.0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) EXPECT_LT(std::abs(j(idx[r], idx[c]) - p(r, c)), 1e-15);
    }
}

TEST(SiteNumber, EigenvaluesAndCommutation) {
    const SiteFockSpace s(2);
    const Matrix n = site_number_operator(s).matrix();
    EXPECT_LT((n * site_ket(s, 1, 1) - 2.0 * site_ket(s, 1, 1)).norm(), 1e-15);
    EXPECT_LT((n * site_ket(s, 0, 0)).norm(), 1e-15);
    for (int cutoff : {1, 2, 3, 4}) {
        const SiteFockSpace t(cutoff);
        const Matrix nt = site_number_operator(t).matrix();
        for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
            EXPECT_EQ(oracle::max_abs(comm(nt, schwinger_j(t, a).matrix())), 0.0);
        }
    }
}

TEST(MaximalAngularMomentum, ResidualVanishesForCutoffsOneToFour) {
    for (int cutoff = 1; cutoff <= 4; ++cutoff) {
        EXPECT_LT(maximal_angular_momentum_check(SiteFockSpace(cutoff)), 1e-12) << cutoff;
    }
    const SiteFockSpace s(2);
    Matrix j2 = Matrix::Zero(6, 6);
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        const Matrix j = schwinger_j(s, a).matrix();
        j2 += j * j;
    }
    EXPECT_LT((j2 * site_ket(s, 2, 0) - 2.0 * site_ket(s, 2, 0)).norm(), 1e-14);
}

TEST(SiteInequalities, HoldForRandomSiteStates) {
    Rng rng(31);
    for (int cutoff : {1, 2, 3}) {
        const SiteFockSpace s(cutoff);
        const HilbertSpace h = s.space();
        std::array<LinearOperator, 3> j{schwinger_j(s, Axis::kX), schwinger_j(s, Axis::kY), schwinger_j(s, Axis::kZ)};
        const LinearOperator n = site_number_operator(s);
        for (int trial = 0; trial < 1000; ++trial) {
            const PureState psi = haar_state(h, rng);
            double mean_sq = 0, var_sum = 0;
            for (const auto &op : j) {
                const double m = expectation(op, psi);
                mean_sq += m * m;
                var_sum += variance(op, psi);
            }
            const double mn = expectation(n, psi);
            EXPECT_LE(mean_sq, mn * mn / 4 + 1e-12);
            EXPECT_GE(var_sum, variance(n, psi) / 4 + mn / 2 - 1e-12);
        }
    }
}

TEST(FockLattice, EmbeddingExamples) {
    const PureState up_up = embed_qubit_chain(PureState::basis(HilbertSpace::qubits(2), 0));
    const FockLatticeSpec lattice(2, 1);
    ASSERT_EQ(up_up.space(), lattice.space());
    const SiteFockSpace &s = lattice.site();
    const Vector expected = oracle::kron(site_ket(s, 1, 0), site_ket(s, 1, 0));
    EXPECT_LT((up_up.amplitudes() - expected).norm(), 1e-15);
    EXPECT_DOUBLE_EQ(expectation(collective_J_fock(lattice, Axis::kZ), up_up), 1.0);
    EXPECT_DOUBLE_EQ(expectation(total_number_operator(lattice), up_up), 2.0);
    EXPECT_THROW(embed_qubit_chain(PureState::basis(lattice.space(), 0)), std::invalid_argument);
}

TEST(FockLattice, EmbeddingIntertwinesCollectiveSpin) {
    Rng rng(5);
    for (int n = 2; n <= 4; ++n) {
        const ChainSpec chain(n);
        const FockLatticeSpec lattice(n, 1);
        for (int trial = 0; trial < 20; ++trial) {
            const PureState q = haar_state(HilbertSpace::qubits(n), rng);
            const PureState f = embed_qubit_chain(q);
            const DensityMatrix fr = embed_qubit_chain(pure_to_density(q));
            for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
                const LinearOperator jq = collective_spin(chain, a);
                const LinearOperator jf = collective_J_fock(lattice, a);
                EXPECT_NEAR(expectation(jf, f), expectation(jq, q), 1e-12);
                EXPECT_NEAR(expectation(jf, fr), expectation(jq, q), 1e-12);
                EXPECT_NEAR(variance(jf, f), variance(jq, q), 1e-12);
            }
            EXPECT_NEAR(expectation(total_number_operator(lattice), f), n, 1e-12);
        }
    }
}

TEST(FockLattice, SingletChain) {
    const PureState s = singlet_chain(2);
    const FockLatticeSpec lattice(4, 1);
    ASSERT_EQ(s.space(), lattice.space());
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        EXPECT_NEAR(expectation(collective_J_fock(lattice, a), s), 0.0, 1e-14);
    }
    EXPECT_NEAR(expectation(total_spin_squared(lattice), s), 0.0, 1e-14);
    EXPECT_NEAR(expectation(total_number_operator(lattice), s), 4.0, 1e-14);
    EXPECT_THROW(singlet_chain(0), std::invalid_argument);
}

TEST(FockLattice, TotalSpinSquaredOnAlignedStates) {
    for (int n = 1; n <= 4; ++n) {
        const FockLatticeSpec lattice(n, 1);
        const PureState up = embed_qubit_chain(PureState::basis(HilbertSpace::qubits(n), 0));
        const double j = n / 2.0;
        EXPECT_NEAR(expectation(total_spin_squared(lattice), up), j * (j + 1), 1e-12);
    }
}

TEST(FockLattice, OccupancySector) {
    const FockLatticeSpec lattice(2, 2);
    const std::array<int, 2> occ{1, 2};
    const auto idx = occupancy_sector(lattice, occ);
    EXPECT_EQ(idx.size(), 2u * 3u);
    const std::array<int, 1> wrong{1};
    EXPECT_THROW(occupancy_sector(lattice, wrong), std::invalid_argument);
}

TEST(Heisenberg, TwoSiteGroundStateIsTheSinglet) {
    const FockLatticeSpec lattice(2, 1);
    const LinearOperator h = heisenberg_hamiltonian(lattice);
    const GroundState g = unit_filling_ground_state(h, lattice);
    EXPECT_NEAR(g.energy, -0.75, 1e-12);
    EXPECT_FALSE(g.degenerate);
    EXPECT_NEAR(fidelity(g.state, singlet_chain(1)), 1.0, 1e-12);
}

TEST(Heisenberg, CommutesWithCollectiveSpin) {
    for (int cutoff : {1, 2}) {
        const FockLatticeSpec lattice(3, cutoff);
        const Matrix h = heisenberg_hamiltonian(lattice).matrix();
        EXPECT_LT(oracle::max_abs(h - h.adjoint()), 1e-14);
        for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
            EXPECT_LT(oracle::max_abs(comm(h, collective_J_fock(lattice, a).matrix())), 1e-12);
        }
        EXPECT_LT(oracle::max_abs(comm(h, total_number_operator(lattice).matrix())), 1e-12);
    }
}

TEST(Heisenberg, FourSiteUnitFillingGroundStateIsASinglet) {
    const FockLatticeSpec lattice(4, 1);
    const LinearOperator h = heisenberg_hamiltonian(lattice);
    const GroundState g = unit_filling_ground_state(h, lattice);
    const double expected = -0.75 - std::sqrt(3.0) / 2;
    EXPECT_NEAR(g.energy, expected, 1e-10);
    EXPECT_NEAR(expectation(total_spin_squared(lattice), g.state), 0.0, 1e-10);
    EXPECT_NEAR(expectation(total_number_operator(lattice), g.state), 4.0, 1e-10);
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        EXPECT_NEAR(variance(collective_J_fock(lattice, a), g.state), 0.0, 1e-10);
    }
}

TEST(Heisenberg, FerromagneticSignFlipsSpectrum) {
    const FockLatticeSpec lattice(2, 1);
    const Matrix anti = heisenberg_hamiltonian(lattice, 1).matrix();
    const Matrix ferro = heisenberg_hamiltonian(lattice, -1).matrix();
    EXPECT_LT(oracle::max_abs(anti + ferro), 1e-15);
}

}  // namespace
}  // namespace qlatwit
