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

#include "qlatwit/spinchain.h"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "qlatwit/kernels.h"

namespace qlatwit {

namespace {

constexpr Complex kI{0, 1};

// Action of a Pauli string on basis state |i>: returns the flipped index and phase.
void check_site(const ChainSpec &chain, int site, const char *what) {
    if (site < 1 || site > chain.n_sites()) {
        throw std::out_of_range(std::string(what) + ": site " + std::to_string(site) + " out of range");
    }
}

std::vector<std::pair<int, Axis>> tilde_factors(const ChainSpec &chain, int k) {
    std::vector<std::pair<int, Axis>> f;
    if (k > 1) {
        f.emplace_back(k - 1, Axis::kZ);
    }
    f.emplace_back(k, Axis::kX);
    if (k < chain.n_sites()) {
        f.emplace_back(k + 1, Axis::kZ);
    }
    return f;
}

}  // namespace

char axis_name(Axis a) {
    switch (a) {
        case Axis::kX:
            return 'x';
        case Axis::kY:
            return 'y';
        case Axis::kZ:
            return 'z';
    }
    return '?';
}

ChainSpec::ChainSpec(int n_sites) : n_sites_(n_sites) {
    if (n_sites < 2) {
        throw std::invalid_argument("ChainSpec: need at least 2 sites");
    }
    if (n_sites > 40) {
        throw DimensionCapError("ChainSpec: too many sites");
    }
}

void ChainSpec::require_even(const char *what) const {
    if (n_sites_ % 2 != 0) {
        throw std::invalid_argument(std::string(what) + ": requires an even number of sites, got " +
                                    std::to_string(n_sites_));
    }
}

Matrix pauli_matrix(Axis axis) {
    Matrix m(2, 2);
    switch (axis) {
        case Axis::kX:
            m << 0, 1, 1, 0;
            break;
        case Axis::kY:
            m << 0, -kI, kI, 0;
            break;
        case Axis::kZ:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

PauliString::PauliString(const ChainSpec &chain, std::span<const std::pair<int, Axis>> factors)
    : n_sites_(chain.n_sites()) {
    int n_y = 0;
    for (auto [site, axis] : factors) {
        check_site(chain, site, "PauliString");
        const std::size_t bit = std::size_t{1} << (n_sites_ - site);
        if ((flip_mask_ | z_mask_) & bit) {
            throw std::invalid_argument("PauliString: repeated site");
        }
        switch (axis) {
            case Axis::kX:
                flip_mask_ |= bit;
                break;
            case Axis::kY:
                // Y|b> = i (-1)^b |1-b>
                flip_mask_ |= bit;
                z_mask_ |= bit;
                ++n_y;
                break;
            case Axis::kZ:
                z_mask_ |= bit;
                break;
        }
    }
    static constexpr std::array<Complex, 4> kPowersOfI{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    y_phase_ = kPowersOfI[n_y % 4];
}

Vector PauliString::apply(const Vector &v) const {
    if (static_cast<std::size_t>(v.size()) != std::size_t{1} << n_sites_) {
        throw std::invalid_argument("PauliString::apply: dimension mismatch");
    }
    Vector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^ flip_mask_)) = phase(i) * v(i);
    }
    return out;
}

LinearOperator PauliString::to_operator() const {
    const HilbertSpace space = HilbertSpace::qubits(n_sites_);
    check_dim_cap(space.dim(), "PauliString::to_operator");
    const auto n = static_cast<Eigen::Index>(space.dim());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^ flip_mask_), i) = phase(i);
    }
    return LinearOperator(space, std::move(m), true);
}

void PauliString::check_state(StateRef state) const {
    if (!state.space().all_qubits() || static_cast<int>(state.space().num_sites()) != n_sites_) {
        throw std::invalid_argument("PauliString: state does not match the chain");
    }
}

double PauliString::expectation(StateRef state) const {
    check_state(state);
    Complex s = 0;
    if (const PureState *psi = state.pure()) {
        const Vector &v = psi->amplitudes();
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            s += std::conj(v(static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^ flip_mask_))) * phase(i) * v(i);
        }
        return s.real();
    }
    // Tr(rho P) = sum_i rho[i, i ^ f] * phase(i).
    const Matrix &rho = state.mixed()->matrix();
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        const std::size_t j = static_cast<std::size_t>(i) ^ flip_mask_;
        s += rho(i, static_cast<Eigen::Index>(j)) * phase(i);
    }
    return s.real();
}

double PauliString::correlation(const PauliString &a, const PauliString &b, StateRef state) {
    if (a.n_sites_ != b.n_sites_) {
        throw std::invalid_argument("PauliString::correlation: strings on different chains");
    }
    a.check_state(state);
    if (const PureState *psi = state.pure()) {
        return a.apply(psi->amplitudes()).dot(b.apply(psi->amplitudes())).real();
    }
    // Tr(rho a b) = sum_i rho[i, i ^ fb ^ fa] * phase_b(i) * phase_a(i ^ fb).
    const Matrix &rho = state.mixed()->matrix();
    Complex s = 0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        const std::size_t j = static_cast<std::size_t>(i) ^ b.flip_mask_;
        s += rho(i, static_cast<Eigen::Index>(j ^ a.flip_mask_)) * b.phase(i) * a.phase(j);
    }
    return s.real();
}

LinearOperator pauli(const ChainSpec &chain, int site, Axis axis) {
    check_site(chain, site, "pauli");
    const std::pair<int, Axis> f{site, axis};
    return pauli_string(chain, std::span(&f, 1));
}

LinearOperator pauli_string(const ChainSpec &chain, std::span<const std::pair<int, Axis>> factors) {
    return PauliString(chain, factors).to_operator();
}

PauliString tilde_string(const ChainSpec &chain, int k) {
    check_site(chain, k, "tilde_string");
    return PauliString(chain, tilde_factors(chain, k));
}

LinearOperator tilde_sigma_x(const ChainSpec &chain, int k) {
    check_site(chain, k, "tilde_sigma_x");
    return pauli_string(chain, tilde_factors(chain, k));
}

LinearOperator collective_spin(const ChainSpec &chain, Axis axis) {
    const HilbertSpace space = chain.space();
    check_dim_cap(space.dim(), "collective_spin");
    const auto n = static_cast<Eigen::Index>(space.dim());
    Matrix m = Matrix::Zero(n, n);
    for (int site = 1; site <= chain.n_sites(); ++site) {
        const std::pair<int, Axis> f{site, axis};
        const PauliString p(chain, std::span(&f, 1));
        for (Eigen::Index i = 0; i < n; ++i) {
            m(static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^ p.flip_mask()), i) += 0.5 * p.phase(i);
        }
    }
    return LinearOperator(space, std::move(m), true);
}

Vector phase_gate_phases(const ChainSpec &chain) {
    const HilbertSpace space = chain.space();
    check_dim_cap(space.dim(), "phase_gate_phases");
    const int n = chain.n_sites();
    Vector phases(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) {
        // (1 - sz_k)(1 - sz_{k+1}) is 4 when both sites are down (bit 1), else 0.
        int both_down = 0;
        for (int k = 1; k < n; ++k) {
            const bool a = (i >> (n - k)) & 1;
            const bool b = (i >> (n - k - 1)) & 1;
            both_down += a && b;
        }
        phases(static_cast<Eigen::Index>(i)) = both_down % 2 ? -1.0 : 1.0;
    }
    return phases;
}

LinearOperator phase_gate_unitary(const ChainSpec &chain) {
    const Vector phases = phase_gate_phases(chain);
    Matrix m = phases.asDiagonal();
    // Phases are +-1, so U_PG is Hermitian as well as unitary.
    return LinearOperator(chain.space(), std::move(m), true);
}

LinearOperator conjugate_by_phase_gate(const ChainSpec &chain, int k) {
    check_site(chain, k, "conjugate_by_phase_gate");
    Matrix m = pauli(chain, k, Axis::kX).matrix();
    kernels::conjugate_diagonal(m, phase_gate_phases(chain));
    return LinearOperator(chain.space(), std::move(m), true);
}

ClusterSpec ClusterSpec::uniform(int n_sites) { return ClusterSpec{ChainSpec(n_sites), std::vector<int>(n_sites, 1)}; }

PureState cluster_state(const ClusterSpec &spec) {
    const ChainSpec &chain = spec.chain;
    const int n = chain.n_sites();
    if (static_cast<int>(spec.lambdas.size()) != n) {
        throw std::invalid_argument("cluster_state: need one eigenvalue per site");
    }
    for (int l : spec.lambdas) {
        if (l != 1 && l != -1) {
            throw std::invalid_argument("cluster_state: eigenvalues must be +1 or -1");
        }
    }
    const HilbertSpace space = chain.space();
    check_dim_cap(space.dim(), "cluster_state");

    std::vector<PauliString> stabilizers;
    for (int k = 1; k <= n; ++k) {
        stabilizers.push_back(tilde_string(chain, k));
    }

    for (unsigned seed = 1; seed <= 3; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss;
        Vector v(space.dim());
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = Complex(gauss(rng), gauss(rng));
        }
        for (int k = 0; k < n; ++k) {
            v = 0.5 * (v + static_cast<double>(spec.lambdas[k]) * stabilizers[k].apply(v));
        }
        if (v.norm() > 1e-8) {
            return PureState::normalized(space, std::move(v));
        }
    }
    throw std::runtime_error("cluster_state: projector annihilated every reference vector");
}

PureState cluster_state_via_phase_gate(const ChainSpec &chain) {
    const HilbertSpace space = chain.space();
    const auto d = static_cast<double>(space.dim());
    Vector v = phase_gate_phases(chain) / std::sqrt(d);
    return PureState::normalized(space, std::move(v));
}

PureState product_state(std::span<const BlochAxis> sites) {
    if (sites.empty()) {
        throw std::invalid_argument("product_state: empty site list");
    }
    const double r = std::numbers::sqrt2 / 2;
    Vector v = Vector::Ones(1);
    for (const auto &s : sites) {
        if (s.sign != 1 && s.sign != -1) {
            throw std::invalid_argument("product_state: sign must be +1 or -1");
        }
        Vector local(2);
        switch (s.axis) {
            case Axis::kX:
                local << r, s.sign * r;
                break;
            case Axis::kY:
                local << r, Complex(0, s.sign * r);
                break;
            case Axis::kZ:
                local = s.sign > 0 ? Vector::Unit(2, 0) : Vector::Unit(2, 1);
                break;
        }
        v = kernels::kron(v, local).col(0);
    }
    HilbertSpace space = HilbertSpace::qubits(static_cast<int>(sites.size()));
    check_dim_cap(space.dim(), "product_state");
    return PureState::normalized(std::move(space), std::move(v));
}

PureState evolve(const LinearOperator &h, double t, const PureState &psi) {
    if (!h.hermitian()) {
        throw std::invalid_argument("evolve: Hamiltonian must be Hermitian");
    }
    if (t == 0) {
        return psi;
    }
    const LinearOperator u = matrix_exponential(h, Complex(0, -t));
    Vector out = apply(u, psi);
    if (std::abs(out.norm() - 1.0) > 1e-10) {
        throw std::runtime_error("evolve: norm drift above 1e-10");
    }
    return PureState::normalized(psi.space(), std::move(out));
}

}  // namespace qlatwit
