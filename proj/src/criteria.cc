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

#include "qlatwit/criteria.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qlatwit/kernels.h"

namespace qlatwit {

namespace {

constexpr std::array<Axis, 3> kAxes = {Axis::kX, Axis::kY, Axis::kZ};

ChainSpec chain_of(StateRef state, const char *what) {
    if (!state.space().all_qubits()) {
        throw std::invalid_argument(std::string(what) + ": state must live on a qubit chain");
    }
    return ChainSpec(static_cast<int>(state.space().num_sites()));
}

Matrix local_spin(const SiteSpec &site, Axis axis) {
    if (site.kind == SiteKind::kQubit) {
        return pauli_matrix(axis) * 0.5;
    }
    return schwinger_j(SiteFockSpace(site.cutoff), axis).matrix();
}

Matrix local_number(const SiteSpec &site) {
    if (site.kind == SiteKind::kQubit) {
        return Matrix::Identity(2, 2);
    }
    return site_number_operator(SiteFockSpace(site.cutoff)).matrix();
}

template <typename Local>
LinearOperator site_sum(const HilbertSpace &space, Local local) {
    check_dim_cap(space.dim(), "site_sum");
    const auto d = static_cast<Eigen::Index>(space.dim());
    Matrix sum = Matrix::Zero(d, d);
    for (int k = 1; k <= static_cast<int>(space.num_sites()); ++k) {
        sum += embed_local(space, k, local(space.site(k)), true).matrix();
    }
    return LinearOperator(space, std::move(sum), true);
}

LinearOperator square(const LinearOperator &op) {
    Matrix m = op.matrix() * op.matrix();
    m = (m + m.adjoint()) * 0.5;
    return LinearOperator(op.space(), std::move(m), true);
}

// <op^m> for m = 1..max_order.
std::vector<double> moments_up_to(const LinearOperator &op, int max_order, StateRef state) {
    std::vector<double> out;
    if (const PureState *psi = state.pure()) {
        // Keep op^k psi and use <psi|op^m|psi> = <op^a psi|op^b psi>.
        std::vector<Vector> powers{psi->amplitudes()};
        for (int k = 1; k <= (max_order + 1) / 2; ++k) {
            powers.push_back(kernels::matvec(op.matrix(), powers.back()));
        }
        for (int m = 1; m <= max_order; ++m) {
            out.push_back(powers[m / 2].dot(powers[m - m / 2]).real());
        }
        return out;
    }
    Matrix power = op.matrix();
    for (int m = 1; m <= max_order; ++m) {
        if (m > 1) {
            power = power * op.matrix();
        }
        out.push_back(kernels::trace_product(state.mixed()->matrix(), power).real());
    }
    return out;
}

}  // namespace

CriterionReport CriterionReport::make(std::string name, double value, double bound, BoundDirection direction) {
    CriterionReport r;
    r.name = std::move(name);
    r.value = value;
    r.bound = bound;
    r.direction = direction;
    r.margin = direction == BoundDirection::kUpper ? value - bound : bound - value;
    r.violated = r.margin > kViolationTolerance;
    return r;
}

Direction::Direction(double x, double y, double z) : v_{x, y, z} {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("Direction: non-finite component");
    }
    if (std::abs(std::sqrt(x * x + y * y + z * z) - 1.0) > 1e-12) {
        throw std::invalid_argument("Direction: not a unit vector");
    }
}

Direction Direction::normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0)) {
        throw std::invalid_argument("Direction: zero vector");
    }
    return Direction(x / n, y / n, z / n);
}

Direction Direction::along(Axis axis) {
    switch (axis) {
        case Axis::kX:
            return {1, 0, 0};
        case Axis::kY:
            return {0, 1, 0};
        case Axis::kZ:
            return {0, 0, 1};
    }
    throw std::logic_error("unreachable");
}

std::string Direction::label() const {
    for (Axis a : kAxes) {
        if (dot(Direction::along(a)) == 1.0) {
            return std::string(1, axis_name(a));
        }
    }
    std::ostringstream os;
    os.precision(6);
    os << "(" << x() << "," << y() << "," << z() << ")";
    return os.str();
}

ChainCorrelators::ChainCorrelators(const ChainSpec &chain) : chain_(chain) {
    for (int k = 1; k <= chain.n_sites(); ++k) {
        tilde_.push_back(tilde_string(chain, k));
    }
}

std::vector<int> ChainCorrelators::x_class_sites(int m) const {
    if (m < 1 || m > 3) {
        throw std::out_of_range("x_class: m must be 1, 2 or 3");
    }
    std::vector<int> sites;
    for (int k = m; k <= chain_.n_sites(); k += 3) {
        sites.push_back(k);
    }
    return sites;
}

LinearOperator ChainCorrelators::x_class(int m) const {
    const HilbertSpace space = chain_.space();
    check_dim_cap(space.dim(), "x_class");
    const auto d = static_cast<Eigen::Index>(space.dim());
    Matrix sum = Matrix::Zero(d, d);
    for (int k : x_class_sites(m)) {
        const PauliString &t = tilde_[k - 1];
        for (Eigen::Index i = 0; i < d; ++i) {
            sum(static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^ t.flip_mask()), i) += t.phase(i);
        }
    }
    return LinearOperator(space, std::move(sum), true);
}

double ChainCorrelators::x_class_mean(int m, StateRef state) const {
    double s = 0;
    for (int k : x_class_sites(m)) {
        s += tilde_[k - 1].expectation(state);
    }
    return s;
}

double ChainCorrelators::x_class_variance(int m, StateRef state) const {
    const std::vector<int> sites = x_class_sites(m);
    const double mean = x_class_mean(m, state);
    double second = 0;
    if (const PureState *psi = state.pure()) {
        Vector image = Vector::Zero(psi->amplitudes().size());
        for (int k : sites) {
            image += tilde_[k - 1].apply(psi->amplitudes());
        }
        second = image.squaredNorm();
    } else {
        for (int k : sites) {
            for (int l : sites) {
                second += PauliString::correlation(tilde_[k - 1], tilde_[l - 1], state);
            }
        }
    }
    const double var = second - mean * mean;
    return var < 0 && var > -kPsdTolerance ? 0.0 : var;
}

CriterionReport ChainCorrelators::witness(StateRef state) const {
    chain_.require_even("witness_criterion");
    double value = 0;
    for (const auto &t : tilde_) {
        value += t.expectation(state);
    }
    const int n = chain_.n_sites();
    auto r = CriterionReport::make("witness", value, n / 2.0, BoundDirection::kUpper);
    r.aux["n_sites"] = static_cast<double>(n);
    r.aux["quadruplet_bound"] = quadruplet_bound(value, n);
    return r;
}

CriterionReport ChainCorrelators::squared(StateRef state) const {
    chain_.require_even("squared_criterion");
    double value = 0;
    for (const auto &t : tilde_) {
        const double e = t.expectation(state);
        value += e * e;
    }
    auto r = CriterionReport::make("squared", value, chain_.n_sites() / 2.0, BoundDirection::kUpper);
    r.aux["n_sites"] = static_cast<double>(chain_.n_sites());
    return r;
}

CriterionReport ChainCorrelators::variance_x(StateRef state) const {
    chain_.require_even("variance_x_criterion");
    double value = 0;
    std::array<double, 3> parts{};
    for (int m = 1; m <= 3; ++m) {
        parts[m - 1] = x_class_variance(m, state);
        value += parts[m - 1];
    }
    auto r = CriterionReport::make("variance_x", value, chain_.n_sites() / 2.0, BoundDirection::kLower);
    r.aux["var_x1"] = parts[0];
    r.aux["var_x2"] = parts[1];
    r.aux["var_x3"] = parts[2];
    return r;
}

CollectiveOperators::CollectiveOperators(const HilbertSpace &space)
    : space_(space), number_(site_sum(space, local_number)) {
    if (!space.all_qubits() && !space.all_fock()) {
        throw std::invalid_argument("CollectiveOperators: mixed qubit/Fock spaces are not supported");
    }
    for (Axis a : kAxes) {
        j_.push_back(site_sum(space, [a](const SiteSpec &s) { return local_spin(s, a); }));
        j_sq_.push_back(square(j_.back()));
    }
}

LinearOperator CollectiveOperators::along(const Direction &n) const {
    Matrix m = n.x() * j_[0].matrix() + n.y() * j_[1].matrix() + n.z() * j_[2].matrix();
    return LinearOperator(space_, std::move(m), true);
}

std::array<double, 3> CollectiveOperators::means(StateRef state) const {
    return {expectation(j_[0], state), expectation(j_[1], state), expectation(j_[2], state)};
}

std::array<std::array<double, 3>, 3> CollectiveOperators::anticommutators(StateRef state) const {
    std::array<std::array<double, 3>, 3> a{};
    if (state.space() != space_) {
        throw std::invalid_argument("anticommutators: space mismatch");
    }
    if (const PureState *psi = state.pure()) {
        std::array<Vector, 3> images;
        for (int k = 0; k < 3; ++k) {
            images[k] = kernels::matvec(j_[k].matrix(), psi->amplitudes());
        }
        // <psi|J_k J_l + J_l J_k|psi> = 2 Re <J_k psi|J_l psi>.
        for (int k = 0; k < 3; ++k) {
            for (int l = 0; l < 3; ++l) {
                a[k][l] = 2 * images[k].dot(images[l]).real();
            }
        }
        return a;
    }
    const Matrix &rho = state.mixed()->matrix();
    for (int k = 0; k < 3; ++k) {
        const Matrix rho_jk = rho * j_[k].matrix();
        for (int l = k; l < 3; ++l) {
            // Tr(rho J_k J_l) + Tr(rho J_l J_k) = 2 Re Tr(rho J_k J_l) for Hermitian rho, J.
            a[k][l] = a[l][k] = 2 * kernels::trace_product(rho_jk, j_[l].matrix()).real();
        }
    }
    return a;
}

CriterionReport CollectiveOperators::collective_uncertainty(StateRef state) const {
    double value = 0;
    double j2 = 0;
    for (int k = 0; k < 3; ++k) {
        value += variance(j_[k], j_sq_[k], state);
        j2 += expectation(j_sq_[k], state);
    }
    const double mean_n = expectation(number_, state);
    auto r = CriterionReport::make("collective_uncertainty", value, mean_n / 2, BoundDirection::kLower);
    r.aux["mean_number"] = mean_n;
    r.aux["total_spin_squared"] = j2;
    return r;
}

CriterionReport witness_criterion(StateRef state) {
    const ChainSpec chain = chain_of(state, "witness_criterion");
    chain.require_even("witness_criterion");
    return ChainCorrelators(chain).witness(state);
}

CriterionReport squared_criterion(StateRef state) {
    const ChainSpec chain = chain_of(state, "squared_criterion");
    chain.require_even("squared_criterion");
    return ChainCorrelators(chain).squared(state);
}

CriterionReport variance_x_criterion(StateRef state) {
    const ChainSpec chain = chain_of(state, "variance_x_criterion");
    chain.require_even("variance_x_criterion");
    return ChainCorrelators(chain).variance_x(state);
}

CriterionReport collective_uncertainty_criterion(StateRef state) {
    return CollectiveOperators(state.space()).collective_uncertainty(state);
}

double quadruplet_bound(double witness_value, int n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0) {
        throw std::invalid_argument("quadruplet_bound: n_sites must be even");
    }
    return std::max(0.0, witness_value / 2 - n_sites / 4.0);
}

namespace {

void require_orthonormal(const Direction &a, const Direction &b, const Direction &c) {
    if (std::abs(a.dot(b)) > 1e-10 || std::abs(a.dot(c)) > 1e-10 || std::abs(b.dot(c)) > 1e-10) {
        throw std::invalid_argument("spin_squeezing_criterion: directions must be mutually orthogonal");
    }
}

double quad(const std::array<std::array<double, 3>, 3> &c, const Direction &n) {
    const std::array<double, 3> v{n.x(), n.y(), n.z()};
    double s = 0;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            s += v[k] * c[k][l] * v[l];
        }
    }
    return s;
}

double lin(const std::array<double, 3> &m, const Direction &n) { return m[0] * n.x() + m[1] * n.y() + m[2] * n.z(); }

struct SqueezingMoments {
    std::array<double, 3> mean;
    std::array<std::array<double, 3>, 3> covariance;
    double mean_number;
};

SqueezingMoments squeezing_moments(StateRef state) {
    const CollectiveOperators ops(state.space());
    SqueezingMoments m;
    m.mean = ops.means(state);
    const auto a = ops.anticommutators(state);
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            m.covariance[k][l] = a[k][l] / 2 - m.mean[k] * m.mean[l];
        }
    }
    m.mean_number = expectation(ops.number(), state);
    return m;
}

CriterionReport squeezing_report(const SqueezingMoments &m, const Direction &n1, const Direction &n2,
                                 const Direction &n3) {
    const double var = std::max(0.0, quad(m.covariance, n1));
    const double e2 = lin(m.mean, n2);
    const double e3 = lin(m.mean, n3);
    const double denom = e2 * e2 + e3 * e3;
    if (denom < 1e-12) {
        CriterionReport r;
        r.name = "spin_squeezing";
        r.value = std::numeric_limits<double>::quiet_NaN();
        r.bound = 1;
        r.direction = BoundDirection::kLower;
        r.undefined = true;
        r.margin = std::numeric_limits<double>::quiet_NaN();
        r.aux["note"] = std::string("undefined: zero mean spin, criterion cannot detect");
        r.aux["numerator"] = m.mean_number * var;
        r.aux["denominator"] = denom;
        return r;
    }
    auto r = CriterionReport::make("spin_squeezing", m.mean_number * var / denom, 1.0, BoundDirection::kLower);
    r.aux["numerator"] = m.mean_number * var;
    r.aux["denominator"] = denom;
    return r;
}

}  // namespace

CriterionReport spin_squeezing_criterion(StateRef state, const Direction &n1, const Direction &n2,
                                         const Direction &n3) {
    require_orthonormal(n1, n2, n3);
    auto r = squeezing_report(squeezing_moments(state), n1, n2, n3);
    r.aux["n1"] = n1.label();
    r.aux["n2"] = n2.label();
    r.aux["n3"] = n3.label();
    return r;
}

CriterionReport best_spin_squeezing(StateRef state, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("best_spin_squeezing: steps must be positive");
    }
    const SqueezingMoments m = squeezing_moments(state);
    std::optional<CriterionReport> best;
    std::array<double, 3> best_angles{};
    const double two_pi = 2 * std::numbers::pi;
    for (int ia = 0; ia < steps; ++ia) {
        for (int ib = 0; ib <= steps; ++ib) {
            for (int ig = 0; ig < steps; ++ig) {
                const double alpha = two_pi * ia / steps;
                const double beta = std::numbers::pi * ib / steps;
                const double gamma = two_pi * ig / steps;
                const Eigen::Matrix3d rot = (Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitZ()) *
                                             Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitY()) *
                                             Eigen::AngleAxisd(gamma, Eigen::Vector3d::UnitZ()))
                                                .toRotationMatrix();
                auto col = [&](int c) { return Direction::normalized(rot(0, c), rot(1, c), rot(2, c)); };
                CriterionReport r = squeezing_report(m, col(0), col(1), col(2));
                if (r.undefined) {
                    continue;
                }
                if (!best || r.value < best->value) {
                    best = r;
                    best_angles = {alpha, beta, gamma};
                }
            }
        }
    }
    if (!best) {
        auto r = squeezing_report(m, Direction::along(Axis::kX), Direction::along(Axis::kY),
                                  Direction::along(Axis::kZ));
        r.aux["grid_steps"] = static_cast<double>(steps);
        return r;
    }
    best->aux["alpha"] = best_angles[0];
    best->aux["beta"] = best_angles[1];
    best->aux["gamma"] = best_angles[2];
    best->aux["grid_steps"] = static_cast<double>(steps);
    return *best;
}

double angular_moment(StateRef state, const Direction &n, int order) {
    if (order < 1) {
        throw std::invalid_argument("angular_moment: order must be >= 1");
    }
    const HilbertSpace &space = state.space();
    Matrix jn = Matrix::Zero(space.dim(), space.dim());
    const std::array<double, 3> alpha{n.x(), n.y(), n.z()};
    for (int k = 0; k < 3; ++k) {
        if (alpha[k] != 0) {
            jn += alpha[k] * site_sum(space, [k](const SiteSpec &s) { return local_spin(s, kAxes[k]); }).matrix();
        }
    }
    return moment(LinearOperator(space, std::move(jn), true), order, state);
}

std::array<std::array<double, 3>, 3> anticommutator_moments(StateRef state) {
    return CollectiveOperators(state.space()).anticommutators(state);
}

DensityMatrix totally_mixed_state(int n_sites) {
    const HilbertSpace space = HilbertSpace::qubits(n_sites);
    check_dim_cap(space.dim(), "totally_mixed_state");
    return DensityMatrix::maximally_mixed(space);
}

DensityMatrix moment_matching_separable_state(int n_sites) {
    if (n_sites < 4) {
        throw std::invalid_argument("moment_matching_separable_state: needs at least 4 sites");
    }
    const ChainSpec chain(n_sites);
    check_dim_cap(chain.space().dim(), "moment_matching_separable_state");
    const double r = std::numbers::sqrt2 / 2;
    Vector up_x(2), down_x(2);
    up_x << r, r;
    down_x << r, -r;
    const Vector uu = kernels::kron(up_x, up_x).col(0);
    const Vector dd = kernels::kron(down_x, down_x).col(0);
    const Matrix aligned = (uu * uu.adjoint() + dd * dd.adjoint()) * 0.5;

    Matrix anti = Matrix::Zero(4, 4);
    anti(1, 1) = 0.5;  // |up,down>
    anti(2, 2) = 0.5;  // |down,up>

    const auto rest = static_cast<Eigen::Index>(std::size_t{1} << (n_sites - 4));
    Matrix rho = kernels::kron(kernels::kron(aligned, anti), Matrix::Identity(rest, rest) / static_cast<double>(rest));

    const LinearOperator u = matrix_exponential(collective_spin(chain, Axis::kY), Complex(0, std::numbers::pi / 4));
    rho = u.matrix() * rho * u.matrix().adjoint();
    rho = (rho + rho.adjoint()) * 0.5;
    return DensityMatrix::trusted(chain.space(), std::move(rho));
}

MomentComparison moment_indistinguishability(StateRef a, StateRef b, const std::vector<Direction> &axes,
                                             int max_order) {
    if (a.space() != b.space()) {
        throw std::invalid_argument("moment_indistinguishability: states live on different spaces");
    }
    if (max_order < 1) {
        throw std::invalid_argument("moment_indistinguishability: max_order must be >= 1");
    }
    const CollectiveOperators ops(a.space());
    std::vector<std::vector<double>> ma, mb;
    for (const auto &n : axes) {
        const LinearOperator jn = ops.along(n);
        ma.push_back(moments_up_to(jn, max_order, a));
        mb.push_back(moments_up_to(jn, max_order, b));
    }
    MomentComparison out;
    for (int m = 1; m <= max_order; ++m) {
        for (std::size_t k = 0; k < axes.size(); ++k) {
            MomentComparison::Row row{axes[k].label(), m, ma[k][m - 1], mb[k][m - 1],
                                      std::abs(ma[k][m - 1] - mb[k][m - 1])};
            if (row.difference >= kMomentTolerance) {
                out.indistinguishable = false;
                if (!out.first_difference) {
                    out.first_difference = row;
                }
            }
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

}  // namespace qlatwit
