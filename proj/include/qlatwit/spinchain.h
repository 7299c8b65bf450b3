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

#ifndef QLATWIT_SPINCHAIN_H
#define QLATWIT_SPINCHAIN_H

#include <bit>
#include <span>
#include <utility>
#include <vector>

#include "qlatwit/qcore.h"

namespace qlatwit {

enum class Axis { kX, kY, kZ };

char axis_name(Axis a);

/// Open chain of qubits. |0> is spin up (sigma_z = +1).
class ChainSpec {
   public:
    explicit ChainSpec(int n_sites);

    int n_sites() const { return n_sites_; }
    HilbertSpace space() const { return HilbertSpace::qubits(n_sites_); }
    /// Throws std::invalid_argument unless the site count is even.
    void require_even(const char *what) const;

   private:
    int n_sites_;
};

/// Product of Paulis on distinct sites, kept as a signed permutation of the
/// computational basis: P|i> = phase(i) |i ^ flip_mask>.
class PauliString {
   public:
    PauliString(const ChainSpec &chain, std::span<const std::pair<int, Axis>> factors);

    int n_sites() const { return n_sites_; }
    std::size_t flip_mask() const { return flip_mask_; }
    Complex phase(std::size_t index) const {
        return (std::popcount(index & z_mask_) % 2 ? -1.0 : 1.0) * y_phase_;
    }

    Vector apply(const Vector &v) const;
    LinearOperator to_operator() const;
    double expectation(StateRef state) const;
    /// Re <a b>.
    static double correlation(const PauliString &a, const PauliString &b, StateRef state);

   private:
    void check_state(StateRef state) const;

    int n_sites_;
    std::size_t flip_mask_ = 0;
    std::size_t z_mask_ = 0;
    Complex y_phase_ = 1;
};

/// 2x2 Pauli matrix.
Matrix pauli_matrix(Axis axis);

/// Single-site Pauli on 1-based `site`.
LinearOperator pauli(const ChainSpec &chain, int site, Axis axis);

/// Product of Paulis on distinct sites, built directly as a signed permutation.
LinearOperator pauli_string(const ChainSpec &chain, std::span<const std::pair<int, Axis>> factors);

/// sigma_z^(k-1) sigma_x^(k) sigma_z^(k+1); the sigma_z factors are dropped past the chain ends.
LinearOperator tilde_sigma_x(const ChainSpec &chain, int k);

PauliString tilde_string(const ChainSpec &chain, int k);

/// Sum of sigma_axis / 2 over all sites.
LinearOperator collective_spin(const ChainSpec &chain, Axis axis);

/// Diagonal of U_PG = exp{ i pi/4 sum_{k<N} (1 - sz_k)(1 - sz_{k+1}) }.
Vector phase_gate_phases(const ChainSpec &chain);
LinearOperator phase_gate_unitary(const ChainSpec &chain);

/// U_PG sigma_x^(k) U_PG.
LinearOperator conjugate_by_phase_gate(const ChainSpec &chain, int k);

struct ClusterSpec {
    ChainSpec chain;
    std::vector<int> lambdas;

    /// All eigenvalues +1.
    static ClusterSpec uniform(int n_sites);
};

/// Joint eigenvector of every tilde_sigma_x(k) with eigenvalue lambdas[k-1].
PureState cluster_state(const ClusterSpec &spec);

/// U_PG |+>^N, the lambda = +1 cluster state built the other way round.
PureState cluster_state_via_phase_gate(const ChainSpec &chain);

struct BlochAxis {
    Axis axis;
    int sign;  // +1 or -1
};

/// Tensor product of single-qubit eigenstates, one per site.
PureState product_state(std::span<const BlochAxis> sites);

/// exp(-i h t) |psi>.
PureState evolve(const LinearOperator &h, double t, const PureState &psi);

}  // namespace qlatwit

#endif
