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

// Separability criteria for qubit chains and two-mode lattices.
//
// Every criterion returns a CriterionReport. A report is "violated" only when
// the value crosses the separable bound by more than kViolationTolerance;
// states that sit exactly on the bound (the bounds are attained by product
// states) are never flagged.

#ifndef QLATWIT_CRITERIA_H
#define QLATWIT_CRITERIA_H

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qlatwit/bosonic.h"
#include "qlatwit/qcore.h"
#include "qlatwit/spinchain.h"

namespace qlatwit {

inline constexpr double kViolationTolerance = 1e-9;

enum class BoundDirection {
    kUpper,  // separable states satisfy value <= bound
    kLower,  // separable states satisfy value >= bound
};

using AuxValue = std::variant<double, std::string>;

struct CriterionReport {
    std::string name;
    double value = 0;
    double bound = 0;
    BoundDirection direction = BoundDirection::kUpper;
    bool violated = false;
    /// Signed distance past the bound; positive means violated.
    double margin = 0;
    /// Set when the criterion cannot be evaluated (e.g. a zero denominator).
    bool undefined = false;
    std::map<std::string, AuxValue> aux;

    static CriterionReport make(std::string name, double value, double bound, BoundDirection direction);
};

/// Unit vector in spin space.
class Direction {
   public:
    Direction(double x, double y, double z);
    static Direction normalized(double x, double y, double z);
    static Direction along(Axis axis);

    double x() const { return v_[0]; }
    double y() const { return v_[1]; }
    double z() const { return v_[2]; }
    double dot(const Direction &o) const { return x() * o.x() + y() * o.y() + z() * o.z(); }
    std::string label() const;

   private:
    std::array<double, 3> v_;
};

/// The tilde_sigma_x correlators of a chain and the three X_m class sums.
/// Everything is evaluated through signed-permutation actions, so no dense
/// operator is formed unless x_class() is called.
class ChainCorrelators {
   public:
    explicit ChainCorrelators(const ChainSpec &chain);

    const ChainSpec &chain() const { return chain_; }
    const std::vector<PauliString> &tilde() const { return tilde_; }
    /// Sites k with k = m mod 3, for m = 1, 2, 3.
    std::vector<int> x_class_sites(int m) const;
    /// Dense X_m = sum of tilde_sigma_x(k) over x_class_sites(m).
    LinearOperator x_class(int m) const;

    double x_class_mean(int m, StateRef state) const;
    double x_class_variance(int m, StateRef state) const;

    CriterionReport witness(StateRef state) const;
    CriterionReport squared(StateRef state) const;
    CriterionReport variance_x(StateRef state) const;

   private:
    ChainSpec chain_;
    std::vector<PauliString> tilde_;
};

/// J_x, J_y, J_z, their squares and the total particle number for a qubit
/// chain (j = sigma/2, one particle per site) or a uniform Fock lattice.
class CollectiveOperators {
   public:
    explicit CollectiveOperators(const HilbertSpace &space);

    const HilbertSpace &space() const { return space_; }
    const LinearOperator &j(Axis axis) const { return j_[static_cast<int>(axis)]; }
    const LinearOperator &j_squared(Axis axis) const { return j_sq_[static_cast<int>(axis)]; }
    const LinearOperator &number() const { return number_; }
    LinearOperator along(const Direction &n) const;

    /// 3x3 table of <{J_k, J_l}> (anticommutators, not halved).
    std::array<std::array<double, 3>, 3> anticommutators(StateRef state) const;
    std::array<double, 3> means(StateRef state) const;

    CriterionReport collective_uncertainty(StateRef state) const;

   private:
    HilbertSpace space_;
    std::vector<LinearOperator> j_;
    std::vector<LinearOperator> j_sq_;
    LinearOperator number_;
};

/// sum_k <tilde_sigma_x(k)> <= N/2. Requires an even qubit chain.
CriterionReport witness_criterion(StateRef state);
/// sum_k <tilde_sigma_x(k)>^2 <= N/2.
CriterionReport squared_criterion(StateRef state);
/// sum_m Var(X_m) >= N/2.
CriterionReport variance_x_criterion(StateRef state);
/// Var(Jx) + Var(Jy) + Var(Jz) >= <N>/2.
CriterionReport collective_uncertainty_criterion(StateRef state);

/// Lower bound on the number of non-overlapping entangled quadruplets: max(0, J/2 - N/4).
double quadruplet_bound(double witness_value, int n_sites);

/// N Var(J_n1) / (<J_n2>^2 + <J_n3>^2) >= 1, N = <total particle number>.
CriterionReport spin_squeezing_criterion(StateRef state, const Direction &n1, const Direction &n2,
                                         const Direction &n3);
/// Minimum of the spin-squeezing parameter over a ZYZ Euler-angle grid of `steps`^3 frames.
CriterionReport best_spin_squeezing(StateRef state, int steps = 24);

double angular_moment(StateRef state, const Direction &n, int order);
std::array<std::array<double, 3>, 3> anticommutator_moments(StateRef state);

/// Identity / 2^N over a qubit chain.
DensityMatrix totally_mixed_state(int n_sites);

/// Separable state whose first moments and anticommutator table equal the cluster state's.
DensityMatrix moment_matching_separable_state(int n_sites);

struct MomentComparison {
    struct Row {
        std::string axis;
        int order;
        double a;
        double b;
        double difference;
    };
    std::vector<Row> rows;
    bool indistinguishable = true;
    /// First (axis, order) pair, by increasing order, whose difference reaches 1e-9.
    std::optional<Row> first_difference;
};

inline constexpr double kMomentTolerance = 1e-9;

MomentComparison moment_indistinguishability(StateRef a, StateRef b, const std::vector<Direction> &axes,
                                             int max_order);

}  // namespace qlatwit

#endif
