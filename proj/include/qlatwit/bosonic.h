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

// Two-mode bosonic lattices.
//
// Each site holds modes a and b with n_a + n_b <= cutoff. The site basis is
// ordered by total particle number, then by decreasing n_a:
//   |0,0>, |1,0>, |0,1>, |2,0>, |1,1>, |0,2>, ...
// so for cutoff 1 the site basis is (vacuum, up, down).

#ifndef QLATWIT_BOSONIC_H
#define QLATWIT_BOSONIC_H

#include <span>
#include <utility>
#include <vector>

#include "qlatwit/qcore.h"
#include "qlatwit/spinchain.h"

namespace qlatwit {

class SiteFockSpace {
   public:
    explicit SiteFockSpace(int cutoff);

    int cutoff() const { return cutoff_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    /// (n_a, n_b) of basis state `index`.
    std::pair<int, int> occupation(int index) const { return basis_[index]; }
    int index_of(int n_a, int n_b) const;
    HilbertSpace space() const { return HilbertSpace({SiteSpec::fock(cutoff_)}); }

   private:
    int cutoff_;
    std::vector<std::pair<int, int>> basis_;
};

/// |j, z> label of a two-mode state with j = (n_a + n_b)/2, z = (n_a - n_b)/2.
struct AngularMomentumLabel {
    double j;
    double z;

    static AngularMomentumLabel from_occupation(int n_a, int n_b);
};

enum class Mode { kA, kB };
enum class Ladder { kAnnihilate, kCreate };

/// Truncated ladder operator; creation beyond the cutoff maps to zero.
LinearOperator mode_operator(const SiteFockSpace &space, Mode mode, Ladder kind);

/// jx = (a'b + ab')/2, jy = i(b'a - a'b)/2, jz = (a'a - b'b)/2.
LinearOperator schwinger_j(const SiteFockSpace &space, Axis axis);

LinearOperator site_number_operator(const SiteFockSpace &space);

/// Norm of jx^2 + jy^2 + jz^2 - (n/2)(1 + n/2) on the whole truncated site space.
double maximal_angular_momentum_check(const SiteFockSpace &space);

class FockLatticeSpec {
   public:
    FockLatticeSpec(int n_sites, int cutoff);

    int n_sites() const { return n_sites_; }
    const SiteFockSpace &site() const { return site_; }
    HilbertSpace space() const { return HilbertSpace::fock_lattice(n_sites_, site_.cutoff()); }

   private:
    int n_sites_;
    SiteFockSpace site_;
};

/// Sum over sites of schwinger_j.
LinearOperator collective_J_fock(const FockLatticeSpec &lattice, Axis axis);
LinearOperator total_number_operator(const FockLatticeSpec &lattice);
LinearOperator total_spin_squared(const FockLatticeSpec &lattice);

/// Open-chain sum of j^(k) . j^(k+1), multiplied by `coupling_sign` (+1 antiferromagnetic).
LinearOperator heisenberg_hamiltonian(const FockLatticeSpec &lattice, int coupling_sign = 1);

/// Maps |0> -> |up> = |1,0>, |1> -> |down> = |0,1> site by site (cutoff 1 lattice).
PureState embed_qubit_chain(const PureState &qubits);
DensityMatrix embed_qubit_chain(const DensityMatrix &qubits);

/// Product of normalized adjacent-pair singlets (|up,down> - |down,up>)/sqrt2.
PureState singlet_chain(int n_pairs);

/// Basis indices of the lattice whose per-site occupations equal `occupancy`.
std::vector<std::size_t> occupancy_sector(const FockLatticeSpec &lattice, std::span<const int> occupancy);

/// Ground state of h restricted to one occupancy sector, embedded back into the full lattice.
GroundState sector_ground_state(const LinearOperator &h, const FockLatticeSpec &lattice,
                                std::span<const int> occupancy);

/// Ground state with exactly one atom per site.
GroundState unit_filling_ground_state(const LinearOperator &h, const FockLatticeSpec &lattice);

}  // namespace qlatwit

#endif
