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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qlatwit/kernels.h"

namespace qlatwit {

namespace {

constexpr Complex kI{0, 1};

Matrix ladder_matrix(const SiteFockSpace &space, Mode mode, Ladder kind) {
    const int d = space.dim();
    Matrix m = Matrix::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        auto [na, nb] = space.occupation(col);
        int &n = mode == Mode::kA ? na : nb;
        const int before = n;
        if (kind == Ladder::kAnnihilate) {
            if (before == 0) {
                continue;
            }
            n -= 1;
            m(space.index_of(na, nb), col) = std::sqrt(static_cast<double>(before));
        } else {
            if (na + nb + 1 > space.cutoff()) {
                continue;
            }
            n += 1;
            m(space.index_of(na, nb), col) = std::sqrt(static_cast<double>(before + 1));
        }
    }
    return m;
}

Matrix schwinger_matrix(const SiteFockSpace &space, Axis axis) {
    const Matrix a = ladder_matrix(space, Mode::kA, Ladder::kAnnihilate);
    const Matrix b = ladder_matrix(space, Mode::kB, Ladder::kAnnihilate);
    const Matrix ad = ladder_matrix(space, Mode::kA, Ladder::kCreate);
    const Matrix bd = ladder_matrix(space, Mode::kB, Ladder::kCreate);
    // Products apply the annihilator first so no intermediate state leaves the truncated space.
    switch (axis) {
        case Axis::kX:
            return (ad * b + bd * a) * 0.5;
        case Axis::kY:
            return (bd * a - ad * b) * (0.5 * kI);
        case Axis::kZ:
            return (ad * a - bd * b) * 0.5;
    }
    throw std::logic_error("unreachable");
}

Matrix number_matrix(const SiteFockSpace &space) {
    Matrix m = Matrix::Zero(space.dim(), space.dim());
    for (int k = 0; k < space.dim(); ++k) {
        auto [na, nb] = space.occupation(k);
        m(k, k) = na + nb;
    }
    return m;
}

// I_left (x) local (x) I_right for an operator on `width` consecutive sites starting at `first`.
LinearOperator embed_block(const FockLatticeSpec &lattice, int first, int width, const Matrix &local) {
    const HilbertSpace space = lattice.space();
    check_dim_cap(space.dim(), "embed_block");
    const int d = lattice.site().dim();
    std::size_t left = 1, right = 1;
    for (int k = 1; k < first; ++k) {
        left *= d;
    }
    for (int k = first + width; k <= lattice.n_sites(); ++k) {
        right *= d;
    }
    Matrix m = kernels::kron(kernels::kron(Matrix::Identity(left, left), local), Matrix::Identity(right, right));
    return LinearOperator(space, std::move(m), is_hermitian(local));
}

Matrix collective_matrix(const FockLatticeSpec &lattice, const Matrix &local) {
    Matrix sum = Matrix::Zero(lattice.space().dim(), lattice.space().dim());
    for (int k = 1; k <= lattice.n_sites(); ++k) {
        sum += embed_block(lattice, k, 1, local).matrix();
    }
    return sum;
}

}  // namespace

SiteFockSpace::SiteFockSpace(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 1) {
        throw std::invalid_argument("SiteFockSpace: cutoff must be >= 1");
    }
    for (int n = 0; n <= cutoff; ++n) {
        for (int na = n; na >= 0; --na) {
            basis_.emplace_back(na, n - na);
        }
    }
}

int SiteFockSpace::index_of(int n_a, int n_b) const {
    const int n = n_a + n_b;
    if (n_a < 0 || n_b < 0 || n > cutoff_) {
        throw std::out_of_range("SiteFockSpace: occupation outside truncated space");
    }
    // Shells 0..n-1 hold n(n+1)/2 states; within a shell n_a decreases from n.
    return n * (n + 1) / 2 + (n - n_a);
}

AngularMomentumLabel AngularMomentumLabel::from_occupation(int n_a, int n_b) {
    if (n_a < 0 || n_b < 0) {
        throw std::invalid_argument("AngularMomentumLabel: negative occupation");
    }
    return {0.5 * (n_a + n_b), 0.5 * (n_a - n_b)};
}

LinearOperator mode_operator(const SiteFockSpace &space, Mode mode, Ladder kind) {
    return LinearOperator(space.space(), ladder_matrix(space, mode, kind), false);
}

LinearOperator schwinger_j(const SiteFockSpace &space, Axis axis) {
    return LinearOperator(space.space(), schwinger_matrix(space, axis), true);
}

LinearOperator site_number_operator(const SiteFockSpace &space) {
    return LinearOperator(space.space(), number_matrix(space), true);
}

double maximal_angular_momentum_check(const SiteFockSpace &space) {
    Matrix j2 = Matrix::Zero(space.dim(), space.dim());
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        const Matrix j = schwinger_matrix(space, a);
        j2 += j * j;
    }
    const Matrix half_n = number_matrix(space) * 0.5;
    const Matrix residual = j2 - half_n * (Matrix::Identity(space.dim(), space.dim()) + half_n);
    // Operator 2-norm via singular values.
    return residual.jacobiSvd().singularValues()(0);
}

FockLatticeSpec::FockLatticeSpec(int n_sites, int cutoff) : n_sites_(n_sites), site_(cutoff) {
    if (n_sites < 1) {
        throw std::invalid_argument("FockLatticeSpec: need at least one site");
    }
    check_dim_cap(space().dim(), "FockLatticeSpec");
}

LinearOperator collective_J_fock(const FockLatticeSpec &lattice, Axis axis) {
    return LinearOperator(lattice.space(), collective_matrix(lattice, schwinger_matrix(lattice.site(), axis)), true);
}

LinearOperator total_number_operator(const FockLatticeSpec &lattice) {
    return LinearOperator(lattice.space(), collective_matrix(lattice, number_matrix(lattice.site())), true);
}

LinearOperator total_spin_squared(const FockLatticeSpec &lattice) {
    const HilbertSpace space = lattice.space();
    Matrix sum = Matrix::Zero(space.dim(), space.dim());
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        const Matrix j = collective_J_fock(lattice, a).matrix();
        sum += j * j;
    }
    sum = (sum + sum.adjoint()) * 0.5;
    return LinearOperator(space, std::move(sum), true);
}

LinearOperator heisenberg_hamiltonian(const FockLatticeSpec &lattice, int coupling_sign) {
    if (coupling_sign != 1 && coupling_sign != -1) {
        throw std::invalid_argument("heisenberg_hamiltonian: coupling sign must be +1 or -1");
    }
    const HilbertSpace space = lattice.space();
    Matrix pair = Matrix::Zero(lattice.site().dim() * lattice.site().dim(), lattice.site().dim() * lattice.site().dim());
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
        const Matrix j = schwinger_matrix(lattice.site(), a);
        pair += kernels::kron(j, j);
    }
    Matrix sum = Matrix::Zero(space.dim(), space.dim());
    for (int k = 1; k < lattice.n_sites(); ++k) {
        sum += embed_block(lattice, k, 2, pair).matrix();
    }
    sum *= static_cast<double>(coupling_sign);
    return LinearOperator(space, std::move(sum), true);
}

namespace {

// Fock index of each qubit basis state under |0> -> |1,0>, |1> -> |0,1>.
std::vector<std::size_t> qubit_embedding_indices(int n_sites) {
    const SiteFockSpace site(1);
    const std::size_t up = site.index_of(1, 0);
    const std::size_t down = site.index_of(0, 1);
    std::vector<std::size_t> out(std::size_t{1} << n_sites);
    for (std::size_t q = 0; q < out.size(); ++q) {
        std::size_t f = 0;
        for (int k = n_sites - 1; k >= 0; --k) {
            f = f * 3 + (((q >> k) & 1) ? down : up);
        }
        out[q] = f;
    }
    return out;
}

}  // namespace

PureState embed_qubit_chain(const PureState &qubits) {
    if (!qubits.space().all_qubits()) {
        throw std::invalid_argument("embed_qubit_chain: input must be a qubit chain");
    }
    const int n = static_cast<int>(qubits.space().num_sites());
    const FockLatticeSpec lattice(n, 1);
    const auto map = qubit_embedding_indices(n);
    Vector v = Vector::Zero(lattice.space().dim());
    for (std::size_t q = 0; q < map.size(); ++q) {
        v(map[q]) = qubits.amplitudes()(q);
    }
    return PureState::normalized(lattice.space(), std::move(v));
}

DensityMatrix embed_qubit_chain(const DensityMatrix &qubits) {
    if (!qubits.space().all_qubits()) {
        throw std::invalid_argument("embed_qubit_chain: input must be a qubit chain");
    }
    const int n = static_cast<int>(qubits.space().num_sites());
    const FockLatticeSpec lattice(n, 1);
    const auto map = qubit_embedding_indices(n);
    Matrix m = Matrix::Zero(lattice.space().dim(), lattice.space().dim());
    for (std::size_t i = 0; i < map.size(); ++i) {
        for (std::size_t j = 0; j < map.size(); ++j) {
            m(map[i], map[j]) = qubits.matrix()(i, j);
        }
    }
    return DensityMatrix::trusted(lattice.space(), std::move(m));
}

PureState singlet_chain(int n_pairs) {
    if (n_pairs < 1) {
        throw std::invalid_argument("singlet_chain: need at least one pair");
    }
    Vector pair = Vector::Zero(4);
    pair(1) = std::numbers::sqrt2 / 2;
    pair(2) = -std::numbers::sqrt2 / 2;
    const PureState singlet(HilbertSpace::qubits(2), pair);
    PureState chain = singlet;
    for (int p = 1; p < n_pairs; ++p) {
        chain = tensor_product(chain, singlet);
    }
    return embed_qubit_chain(chain);
}

std::vector<std::size_t> occupancy_sector(const FockLatticeSpec &lattice, std::span<const int> occupancy) {
    if (static_cast<int>(occupancy.size()) != lattice.n_sites()) {
        throw std::invalid_argument("occupancy_sector: need one occupation per site");
    }
    const auto dims = lattice.space().site_dims();
    kernels::MixedRadix radix(dims);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < radix.size(); ++i) {
        bool match = true;
        for (int k = 0; k < lattice.n_sites() && match; ++k) {
            auto [na, nb] = lattice.site().occupation(radix.digit(i, k));
            match = na + nb == occupancy[k];
        }
        if (match) {
            out.push_back(i);
        }
    }
    return out;
}

GroundState sector_ground_state(const LinearOperator &h, const FockLatticeSpec &lattice,
                                std::span<const int> occupancy) {
    if (h.space() != lattice.space()) {
        throw std::invalid_argument("sector_ground_state: operator does not act on the lattice");
    }
    if (!h.hermitian()) {
        throw std::invalid_argument("sector_ground_state: operator must be Hermitian");
    }
    const auto idx = occupancy_sector(lattice, occupancy);
    if (idx.empty()) {
        throw std::invalid_argument("sector_ground_state: empty occupancy sector");
    }
    const auto n = static_cast<Eigen::Index>(idx.size());
    Matrix sub(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            sub(i, j) = h.matrix()(idx[i], idx[j]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sub);
    const Eigen::VectorXd &w = solver.eigenvalues();
    Vector full = Vector::Zero(lattice.space().dim());
    for (Eigen::Index i = 0; i < n; ++i) {
        full(idx[i]) = solver.eigenvectors()(i, 0);
    }
    const double gap = n > 1 ? w(1) - w(0) : std::numeric_limits<double>::infinity();
    return GroundState{w(0), PureState::normalized(lattice.space(), std::move(full)), gap, gap < kDegeneracyGap};
}

GroundState unit_filling_ground_state(const LinearOperator &h, const FockLatticeSpec &lattice) {
    const std::vector<int> ones(lattice.n_sites(), 1);
    return sector_ground_state(h, lattice, ones);
}

}  // namespace qlatwit
