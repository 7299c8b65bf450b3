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

#include "qlatwit/qcore.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "qlatwit/kernels.h"

namespace qlatwit {

namespace {

std::size_t initial_dim_cap() {
    if (const char *env = std::getenv("QLATWIT_DIM_CAP")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return 4096;
}

std::atomic<std::size_t> &cap_storage() {
    static std::atomic<std::size_t> cap{initial_dim_cap()};
    return cap;
}

bool all_finite(const Matrix &m) { return m.allFinite(); }

void require_same_space(const HilbertSpace &a, const HilbertSpace &b, const char *what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": space mismatch (" + a.str() + " vs " + b.str() + ")");
    }
}

void require_hermitian_op(const LinearOperator &op, const char *what) {
    if (!op.hermitian()) {
        throw std::invalid_argument(std::string(what) + ": operator is not marked Hermitian");
    }
}

double real_part_checked(Complex z, const char *what) {
    if (std::abs(z.imag()) >= kImagResidueTolerance * std::max(1.0, std::abs(z.real()))) {
        std::ostringstream msg;
        msg << what << ": imaginary residue " << z.imag() << " exceeds tolerance";
        throw std::logic_error(msg.str());
    }
    return z.real();
}

std::vector<bool> site_mask(const HilbertSpace &space, std::span<const int> sites, const char *what) {
    std::vector<bool> mask(space.num_sites(), false);
    for (int s : sites) {
        if (s < 1 || static_cast<std::size_t>(s) > space.num_sites()) {
            throw std::out_of_range(std::string(what) + ": site " + std::to_string(s) + " out of range");
        }
        if (mask[s - 1]) {
            throw std::invalid_argument(std::string(what) + ": repeated site " + std::to_string(s));
        }
        mask[s - 1] = true;
    }
    return mask;
}

// std::vector<bool> has no contiguous storage; kernels take span<const bool>.
struct BoolBuffer {
    explicit BoolBuffer(const std::vector<bool> &v) : data(new bool[v.size()]), size(v.size()) {
        std::copy(v.begin(), v.end(), data.get());
    }
    std::span<const bool> span() const { return {data.get(), size}; }
    std::unique_ptr<bool[]> data;
    std::size_t size;
};

}  // namespace

std::size_t dim_cap() { return cap_storage().load(); }

void set_dim_cap(std::size_t cap) {
    if (cap == 0) {
        throw std::invalid_argument("dimension cap must be positive");
    }
    cap_storage().store(cap);
}

void check_dim_cap(std::size_t dim, const char *what) {
    if (dim > dim_cap()) {
        throw DimensionCapError(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds cap " +
                                std::to_string(dim_cap()));
    }
}

SiteSpec SiteSpec::fock(int cutoff) {
    if (cutoff < 1) {
        throw std::invalid_argument("Fock site cutoff must be >= 1");
    }
    return {SiteKind::kFock, cutoff};
}

HilbertSpace::HilbertSpace(std::vector<SiteSpec> sites) : sites_(std::move(sites)) {
    for (const auto &s : sites_) {
        if (dim_ > (std::size_t{1} << 40) / static_cast<std::size_t>(s.dim())) {
            throw DimensionCapError("HilbertSpace: dimension overflow");
        }
        dim_ *= static_cast<std::size_t>(s.dim());
    }
}

HilbertSpace HilbertSpace::qubits(int n_sites) {
    if (n_sites < 1) {
        throw std::invalid_argument("qubit chain needs at least one site");
    }
    return HilbertSpace(std::vector<SiteSpec>(n_sites, SiteSpec::qubit()));
}

HilbertSpace HilbertSpace::fock_lattice(int n_sites, int cutoff) {
    if (n_sites < 1) {
        throw std::invalid_argument("Fock lattice needs at least one site");
    }
    return HilbertSpace(std::vector<SiteSpec>(n_sites, SiteSpec::fock(cutoff)));
}

const SiteSpec &HilbertSpace::site(int k) const {
    if (k < 1 || static_cast<std::size_t>(k) > sites_.size()) {
        throw std::out_of_range("site " + std::to_string(k) + " out of range");
    }
    return sites_[k - 1];
}

std::vector<int> HilbertSpace::site_dims() const {
    std::vector<int> dims;
    dims.reserve(sites_.size());
    for (const auto &s : sites_) {
        dims.push_back(s.dim());
    }
    return dims;
}

bool HilbertSpace::all_qubits() const {
    return std::all_of(sites_.begin(), sites_.end(), [](const SiteSpec &s) { return s.kind == SiteKind::kQubit; });
}

bool HilbertSpace::all_fock() const {
    return std::all_of(sites_.begin(), sites_.end(), [](const SiteSpec &s) { return s.kind == SiteKind::kFock; });
}

HilbertSpace HilbertSpace::concat(const HilbertSpace &other) const {
    std::vector<SiteSpec> sites = sites_;
    sites.insert(sites.end(), other.sites_.begin(), other.sites_.end());
    return HilbertSpace(std::move(sites));
}

HilbertSpace HilbertSpace::restrict_to(std::span<const int> sites) const {
    std::vector<SiteSpec> out;
    for (int s : sites) {
        out.push_back(site(s));
    }
    return HilbertSpace(std::move(out));
}

std::string HilbertSpace::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < sites_.size(); ++k) {
        if (k) {
            os << ",";
        }
        if (sites_[k].kind == SiteKind::kQubit) {
            os << "q";
        } else {
            os << "f" << sites_[k].cutoff;
        }
    }
    os << "]";
    return os.str();
}

PureState::PureState(HilbertSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
        throw std::invalid_argument("PureState: amplitude count does not match space dimension");
    }
    if (!amplitudes_.allFinite()) {
        throw std::domain_error("PureState: non-finite amplitude");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
        throw std::domain_error("PureState: amplitudes not normalized");
    }
}

PureState PureState::normalized(HilbertSpace space, Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0) || !std::isfinite(norm)) {
        throw std::domain_error("PureState: cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return PureState(std::move(space), std::move(amplitudes));
}

PureState PureState::basis(HilbertSpace space, std::size_t index) {
    if (index >= space.dim()) {
        throw std::out_of_range("PureState::basis: index out of range");
    }
    Vector v = Vector::Zero(space.dim());
    v(index) = 1;
    return PureState(std::move(space), std::move(v));
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix matrix, Unchecked)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (static_cast<std::size_t>(matrix_.rows()) != space_.dim() || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix does not match space dimension");
    }
    if (!all_finite(matrix_)) {
        throw std::domain_error("DensityMatrix: non-finite entry");
    }
    if (!is_hermitian(matrix_)) {
        throw std::domain_error("DensityMatrix: not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTolerance) {
        throw std::domain_error("DensityMatrix: trace is not 1");
    }
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix matrix)
    : DensityMatrix(std::move(space), std::move(matrix), Unchecked{}) {
    validate();
}

DensityMatrix DensityMatrix::trusted(HilbertSpace space, Matrix matrix) {
    return DensityMatrix(std::move(space), std::move(matrix), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(HilbertSpace space) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    return trusted(std::move(space), Matrix::Identity(d, d) / static_cast<double>(d));
}

void DensityMatrix::validate() const {
    if (!is_hermitian(matrix_)) {
        throw std::domain_error("DensityMatrix: not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTolerance) {
        throw std::domain_error("DensityMatrix: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPsdTolerance) {
        throw std::domain_error("DensityMatrix: negative eigenvalue");
    }
}

bool is_hermitian(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

LinearOperator::LinearOperator(HilbertSpace space, Matrix matrix, bool hermitian_hint)
    : space_(std::move(space)), matrix_(std::move(matrix)), hermitian_(hermitian_hint) {
    if (static_cast<std::size_t>(matrix_.rows()) != space_.dim() || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("LinearOperator: matrix does not match space dimension");
    }
    if (!all_finite(matrix_)) {
        throw std::domain_error("LinearOperator: non-finite entry");
    }
    if (hermitian_ && !is_hermitian(matrix_)) {
        throw std::domain_error("LinearOperator: Hermitian hint set on a non-Hermitian matrix");
    }
}

LinearOperator LinearOperator::identity(HilbertSpace space) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    return LinearOperator(std::move(space), Matrix::Identity(d, d), true);
}

LinearOperator LinearOperator::operator*(const LinearOperator &rhs) const {
    require_same_space(space_, rhs.space_, "operator*");
    Matrix m = matrix_ * rhs.matrix_;
    // A product of Hermitian operators is Hermitian only if they commute; re-check.
    const bool herm = hermitian_ && rhs.hermitian_ && is_hermitian(m);
    return LinearOperator(space_, std::move(m), herm);
}

LinearOperator LinearOperator::operator+(const LinearOperator &rhs) const {
    require_same_space(space_, rhs.space_, "operator+");
    return LinearOperator(space_, matrix_ + rhs.matrix_, hermitian_ && rhs.hermitian_);
}

LinearOperator LinearOperator::operator-(const LinearOperator &rhs) const {
    require_same_space(space_, rhs.space_, "operator-");
    return LinearOperator(space_, matrix_ - rhs.matrix_, hermitian_ && rhs.hermitian_);
}

LinearOperator LinearOperator::scaled(double s) const { return LinearOperator(space_, matrix_ * s, hermitian_); }

LinearOperator LinearOperator::scaled(Complex s) const {
    return LinearOperator(space_, matrix_ * s, hermitian_ && s.imag() == 0);
}

LinearOperator LinearOperator::adjoint() const { return LinearOperator(space_, matrix_.adjoint(), hermitian_); }

PureState tensor_product(const PureState &a, const PureState &b) {
    HilbertSpace space = a.space().concat(b.space());
    check_dim_cap(space.dim(), "tensor_product");
    Matrix m = kernels::kron(a.amplitudes(), b.amplitudes());
    return PureState::normalized(std::move(space), m.col(0));
}

DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b) {
    HilbertSpace space = a.space().concat(b.space());
    check_dim_cap(space.dim(), "tensor_product");
    return DensityMatrix::trusted(std::move(space), kernels::kron(a.matrix(), b.matrix()));
}

LinearOperator tensor_product(const LinearOperator &a, const LinearOperator &b) {
    HilbertSpace space = a.space().concat(b.space());
    check_dim_cap(space.dim(), "tensor_product");
    return LinearOperator(std::move(space), kernels::kron(a.matrix(), b.matrix()), a.hermitian() && b.hermitian());
}

LinearOperator embed_local(const HilbertSpace &space, int site, const Matrix &local, bool hermitian_hint) {
    const int d = space.site(site).dim();
    if (local.rows() != d || local.cols() != d) {
        throw std::invalid_argument("embed_local: local operator does not match site dimension");
    }
    check_dim_cap(space.dim(), "embed_local");
    // Block structure: I_left (x) local (x) I_right, filled directly.
    std::size_t left = 1, right = 1;
    for (int k = 1; k < site; ++k) {
        left *= space.site(k).dim();
    }
    for (std::size_t k = site + 1; k <= space.num_sites(); ++k) {
        right *= space.site(static_cast<int>(k)).dim();
    }
    const auto n = static_cast<Eigen::Index>(space.dim());
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t l = 0; l < left; ++l) {
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                if (local(a, b) == Complex(0)) {
                    continue;
                }
                for (std::size_t r = 0; r < right; ++r) {
                    const std::size_t i = (l * d + a) * right + r;
                    const std::size_t j = (l * d + b) * right + r;
                    m(i, j) = local(a, b);
                }
            }
        }
    }
    return LinearOperator(space, std::move(m), hermitian_hint);
}

DensityMatrix pure_to_density(const PureState &psi) {
    check_dim_cap(psi.dim(), "pure_to_density");
    const Vector &v = psi.amplitudes();
    Matrix m = v * v.adjoint();
    return DensityMatrix::trusted(psi.space(), std::move(m));
}

Vector apply(const LinearOperator &op, const PureState &psi) {
    require_same_space(op.space(), psi.space(), "apply");
    return kernels::matvec(op.matrix(), psi.amplitudes());
}

double expectation(const LinearOperator &op, const PureState &psi) {
    require_hermitian_op(op, "expectation");
    require_same_space(op.space(), psi.space(), "expectation");
    return real_part_checked(kernels::quadratic_form(op.matrix(), psi.amplitudes()), "expectation");
}

double expectation(const LinearOperator &op, const DensityMatrix &rho) {
    require_hermitian_op(op, "expectation");
    require_same_space(op.space(), rho.space(), "expectation");
    return real_part_checked(kernels::trace_product(rho.matrix(), op.matrix()), "expectation");
}

namespace {

double clamp_variance(double v) {
    if (v < 0 && v > -kPsdTolerance) {
        return 0.0;
    }
    return v;
}

}  // namespace

double variance(const LinearOperator &op, const LinearOperator &op_squared, const PureState &psi) {
    const double mean = expectation(op, psi);
    return clamp_variance(expectation(op_squared, psi) - mean * mean);
}

double variance(const LinearOperator &op, const LinearOperator &op_squared, const DensityMatrix &rho) {
    const double mean = expectation(op, rho);
    return clamp_variance(expectation(op_squared, rho) - mean * mean);
}

double variance(const LinearOperator &op, const PureState &psi) {
    require_hermitian_op(op, "variance");
    require_same_space(op.space(), psi.space(), "variance");
    // <op^2> = |op psi|^2 for Hermitian op.
    const Vector image = kernels::matvec(op.matrix(), psi.amplitudes());
    const double mean = expectation(op, psi);
    return clamp_variance(image.squaredNorm() - mean * mean);
}

double variance(const LinearOperator &op, const DensityMatrix &rho) {
    require_hermitian_op(op, "variance");
    LinearOperator sq(op.space(), op.matrix() * op.matrix(), true);
    return variance(op, sq, rho);
}

double expectation(const LinearOperator &op, StateRef state) {
    return state.pure() ? expectation(op, *state.pure()) : expectation(op, *state.mixed());
}

double variance(const LinearOperator &op, const LinearOperator &op_squared, StateRef state) {
    return state.pure() ? variance(op, op_squared, *state.pure()) : variance(op, op_squared, *state.mixed());
}

double moment(const LinearOperator &op, int order, StateRef state) {
    if (order < 1) {
        throw std::invalid_argument("moment: order must be >= 1");
    }
    require_hermitian_op(op, "moment");
    require_same_space(op.space(), state.space(), "moment");
    if (const PureState *psi = state.pure()) {
        // <psi| op^m |psi> = <op^a psi | op^b psi> with a + b = m.
        Vector left = psi->amplitudes();
        for (int k = 0; k < order / 2; ++k) {
            left = kernels::matvec(op.matrix(), left);
        }
        Vector right = left;
        if (order % 2) {
            right = kernels::matvec(op.matrix(), right);
        }
        return real_part_checked(left.dot(right), "moment");
    }
    Matrix power = op.matrix();
    for (int k = 1; k < order; ++k) {
        power = power * op.matrix();
    }
    return real_part_checked(kernels::trace_product(state.mixed()->matrix(), power), "moment");
}

double fidelity(const PureState &a, const PureState &b) {
    require_same_space(a.space(), b.space(), "fidelity");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep_sites) {
    if (keep_sites.empty()) {
        throw std::invalid_argument("partial_trace: keep list is empty");
    }
    const auto mask = site_mask(rho.space(), keep_sites, "partial_trace");
    const auto dims = rho.space().site_dims();
    BoolBuffer keep(mask);
    Matrix reduced = kernels::partial_trace(rho.matrix(), dims, keep.span());

    // Kernel output follows site order; reorder if the caller listed sites out of order.
    std::vector<int> sorted(keep_sites.begin(), keep_sites.end());
    std::sort(sorted.begin(), sorted.end());
    HilbertSpace sorted_space = rho.space().restrict_to(sorted);
    if (std::equal(sorted.begin(), sorted.end(), keep_sites.begin())) {
        return DensityMatrix::trusted(std::move(sorted_space), std::move(reduced));
    }
    const auto sdims = sorted_space.site_dims();
    kernels::MixedRadix from(sdims);
    std::vector<int> perm;  // position in sorted order of each requested site
    for (int s : keep_sites) {
        perm.push_back(static_cast<int>(std::find(sorted.begin(), sorted.end(), s) - sorted.begin()));
    }
    std::vector<std::size_t> target(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
        std::size_t t = 0;
        for (int p : perm) {
            t = t * sdims[p] + from.digit(i, p);
        }
        target[i] = t;
    }
    Matrix permuted(reduced.rows(), reduced.cols());
    for (std::size_t i = 0; i < from.size(); ++i) {
        for (std::size_t j = 0; j < from.size(); ++j) {
            permuted(target[i], target[j]) = reduced(i, j);
        }
    }
    return DensityMatrix::trusted(rho.space().restrict_to(keep_sites), std::move(permuted));
}

LinearOperator matrix_exponential(const LinearOperator &op, Complex scale) {
    check_dim_cap(op.dim(), "matrix_exponential");
    const HilbertSpace &space = op.space();
    if (op.hermitian()) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
        const Eigen::VectorXd &w = solver.eigenvalues();
        Vector phases(w.size());
        for (Eigen::Index k = 0; k < w.size(); ++k) {
            phases(k) = std::exp(scale * w(k));
        }
        const Matrix &v = solver.eigenvectors();
        Matrix out = v * phases.asDiagonal() * v.adjoint();
        // exp(real * H) stays Hermitian.
        const bool herm = scale.imag() == 0 && is_hermitian(out, 1e-10);
        if (herm) {
            out = (out + out.adjoint()) * 0.5;
        }
        return LinearOperator(space, std::move(out), herm);
    }
    Matrix scaled = op.matrix() * scale;
    Matrix out = scaled.exp();
    return LinearOperator(space, std::move(out), false);
}

double negativity(const DensityMatrix &rho, std::span<const int> subsystem) {
    const auto mask = site_mask(rho.space(), subsystem, "negativity");
    const auto count = std::count(mask.begin(), mask.end(), true);
    if (count == 0 || static_cast<std::size_t>(count) == mask.size()) {
        throw std::invalid_argument("negativity: trivial bipartition");
    }
    check_dim_cap(rho.dim(), "negativity");
    const auto dims = rho.space().site_dims();
    BoolBuffer flags(mask);
    Matrix pt = kernels::partial_transpose(rho.matrix(), dims, flags.span());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(pt, Eigen::EigenvaluesOnly);
    double neg = 0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        if (solver.eigenvalues()(k) < 0) {
            neg -= solver.eigenvalues()(k);
        }
    }
    return neg;
}

Eigen::VectorXd eigenvalues(const LinearOperator &h) {
    require_hermitian_op(h, "eigenvalues");
    check_dim_cap(h.dim(), "eigenvalues");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

GroundState ground_state(const LinearOperator &h) {
    require_hermitian_op(h, "ground_state");
    check_dim_cap(h.dim(), "ground_state");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    const Eigen::VectorXd &w = solver.eigenvalues();
    const double gap = w.size() > 1 ? w(1) - w(0) : std::numeric_limits<double>::infinity();
    return GroundState{w(0), PureState::normalized(h.space(), solver.eigenvectors().col(0)), gap,
                       gap < kDegeneracyGap};
}

}  // namespace qlatwit
