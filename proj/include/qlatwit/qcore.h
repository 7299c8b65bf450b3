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

#ifndef QLATWIT_QCORE_H
#define QLATWIT_QCORE_H

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qlatwit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tolerances shared by every module.
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kImagResidueTolerance = 1e-10;
inline constexpr double kDegeneracyGap = 1e-8;

/// Thrown when an operation would build a space larger than the dimension cap.
struct DimensionCapError : std::length_error {
    using std::length_error::length_error;
};

/// Current dimension cap. Defaults to 4096 unless QLATWIT_DIM_CAP is set.
std::size_t dim_cap();
void set_dim_cap(std::size_t cap);
void check_dim_cap(std::size_t dim, const char *what);

enum class SiteKind { kQubit, kFock };

/// One tensor factor. Fock sites hold two bosonic modes with n_a + n_b <= cutoff.
struct SiteSpec {
    SiteKind kind = SiteKind::kQubit;
    int cutoff = 0;

    static SiteSpec qubit() { return {SiteKind::kQubit, 0}; }
    static SiteSpec fock(int cutoff);

    int dim() const { return kind == SiteKind::kQubit ? 2 : (cutoff + 1) * (cutoff + 2) / 2; }
    bool operator==(const SiteSpec &) const = default;
};

/// Ordered list of sites. Site 1 is the most significant digit of a basis index.
class HilbertSpace {
   public:
    HilbertSpace() = default;
    explicit HilbertSpace(std::vector<SiteSpec> sites);

    static HilbertSpace qubits(int n_sites);
    static HilbertSpace fock_lattice(int n_sites, int cutoff);

    std::size_t num_sites() const { return sites_.size(); }
    std::size_t dim() const { return dim_; }
    /// 1-based.
    const SiteSpec &site(int k) const;
    const std::vector<SiteSpec> &sites() const { return sites_; }
    std::vector<int> site_dims() const;
    bool all_qubits() const;
    bool all_fock() const;

    HilbertSpace concat(const HilbertSpace &other) const;
    /// Subspace over the given 1-based sites, in the order given.
    HilbertSpace restrict_to(std::span<const int> sites) const;

    bool operator==(const HilbertSpace &) const = default;
    std::string str() const;

   private:
    std::vector<SiteSpec> sites_;
    std::size_t dim_ = 1;
};

class PureState {
   public:
    /// Requires unit norm within kNormTolerance.
    PureState(HilbertSpace space, Vector amplitudes);
    /// Rescales to unit norm; rejects the zero vector.
    static PureState normalized(HilbertSpace space, Vector amplitudes);
    static PureState basis(HilbertSpace space, std::size_t index);

    const HilbertSpace &space() const { return space_; }
    const Vector &amplitudes() const { return amplitudes_; }
    std::size_t dim() const { return space_.dim(); }

   private:
    HilbertSpace space_;
    Vector amplitudes_;
};

class DensityMatrix {
   public:
    /// Full validation: Hermitian, unit trace, eigenvalues >= -kPsdTolerance.
    DensityMatrix(HilbertSpace space, Matrix matrix);
    /// Skips the eigenvalue check. For outputs of trace-preserving CP maps.
    static DensityMatrix trusted(HilbertSpace space, Matrix matrix);
    static DensityMatrix maximally_mixed(HilbertSpace space);

    const HilbertSpace &space() const { return space_; }
    const Matrix &matrix() const { return matrix_; }
    std::size_t dim() const { return space_.dim(); }

    /// Re-runs the full validation, throwing std::domain_error on failure.
    void validate() const;

   private:
    struct Unchecked {};
    DensityMatrix(HilbertSpace space, Matrix matrix, Unchecked);

    HilbertSpace space_;
    Matrix matrix_;
};

class LinearOperator {
   public:
    LinearOperator(HilbertSpace space, Matrix matrix, bool hermitian_hint = false);
    static LinearOperator identity(HilbertSpace space);

    const HilbertSpace &space() const { return space_; }
    const Matrix &matrix() const { return matrix_; }
    bool hermitian() const { return hermitian_; }
    std::size_t dim() const { return space_.dim(); }

    LinearOperator operator*(const LinearOperator &rhs) const;
    LinearOperator operator+(const LinearOperator &rhs) const;
    LinearOperator operator-(const LinearOperator &rhs) const;
    /// Real scaling keeps the Hermitian hint; complex scaling drops it.
    LinearOperator scaled(double s) const;
    LinearOperator scaled(Complex s) const;
    LinearOperator adjoint() const;

   private:
    HilbertSpace space_;
    Matrix matrix_;
    bool hermitian_ = false;
};

bool is_hermitian(const Matrix &m, double tol = kHermitianTolerance);

PureState tensor_product(const PureState &a, const PureState &b);
DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b);
LinearOperator tensor_product(const LinearOperator &a, const LinearOperator &b);

/// Embeds a local operator on 1-based `site` with identities elsewhere.
LinearOperator embed_local(const HilbertSpace &space, int site, const Matrix &local, bool hermitian_hint);

DensityMatrix pure_to_density(const PureState &psi);

/// op |psi>, without renormalization.
Vector apply(const LinearOperator &op, const PureState &psi);

double expectation(const LinearOperator &op, const PureState &psi);
double expectation(const LinearOperator &op, const DensityMatrix &rho);
double variance(const LinearOperator &op, const PureState &psi);
double variance(const LinearOperator &op, const DensityMatrix &rho);
/// Variance when the square of op has already been built.
double variance(const LinearOperator &op, const LinearOperator &op_squared, const PureState &psi);
double variance(const LinearOperator &op, const LinearOperator &op_squared, const DensityMatrix &rho);

/// Non-owning reference to either kind of state.
class StateRef {
   public:
    StateRef(const PureState &psi) : pure_(&psi) {}        // NOLINT(google-explicit-constructor)
    StateRef(const DensityMatrix &rho) : mixed_(&rho) {}   // NOLINT(google-explicit-constructor)

    const HilbertSpace &space() const { return pure_ ? pure_->space() : mixed_->space(); }
    const PureState *pure() const { return pure_; }
    const DensityMatrix *mixed() const { return mixed_; }

   private:
    const PureState *pure_ = nullptr;
    const DensityMatrix *mixed_ = nullptr;
};

double expectation(const LinearOperator &op, StateRef state);
double variance(const LinearOperator &op, const LinearOperator &op_squared, StateRef state);
/// <op^m>; op must be Hermitian.
double moment(const LinearOperator &op, int order, StateRef state);

/// |<a|b>|^2.
double fidelity(const PureState &a, const PureState &b);

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep_sites);

/// exp(scale * op). Hermitian-hinted generators go through an eigendecomposition.
LinearOperator matrix_exponential(const LinearOperator &op, Complex scale);

/// Sum of |negative eigenvalues| of the partial transpose over `subsystem` (1-based sites).
double negativity(const DensityMatrix &rho, std::span<const int> subsystem);
inline constexpr double kNegativityTolerance = 1e-9;

struct GroundState {
    double energy = 0;
    PureState state;
    double gap = 0;
    bool degenerate = false;
};

GroundState ground_state(const LinearOperator &h);

/// Eigenvalues of a Hermitian operator in ascending order.
Eigen::VectorXd eigenvalues(const LinearOperator &h);

}  // namespace qlatwit

#endif
