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

#include "qlatwit/sampling.h"

#include <stdexcept>

#include "qlatwit/kernels.h"

namespace qlatwit {

Vector haar_vector(int dim, Rng &rng) {
    std::normal_distribution<double> gauss;
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = Complex(gauss(rng), gauss(rng));
    }
    return v / v.norm();
}

PureState haar_state(const HilbertSpace &space, Rng &rng) {
    check_dim_cap(space.dim(), "haar_state");
    return PureState::normalized(space, haar_vector(static_cast<int>(space.dim()), rng));
}

Matrix random_hermitian(int dim, Rng &rng) {
    std::normal_distribution<double> gauss;
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    return (m + m.adjoint()) * 0.5;
}

PureState random_product_state(const HilbertSpace &space, Rng &rng) {
    check_dim_cap(space.dim(), "random_product_state");
    Matrix v = Matrix::Ones(1, 1);
    for (const auto &site : space.sites()) {
        v = kernels::kron(v, haar_vector(site.dim(), rng));
    }
    return PureState::normalized(space, v.col(0));
}

DensityMatrix random_separable_state(const HilbertSpace &space, int max_terms, Rng &rng) {
    if (max_terms < 1) {
        throw std::invalid_argument("random_separable_state: need at least one term");
    }
    check_dim_cap(space.dim(), "random_separable_state");
    std::uniform_int_distribution<int> count(1, max_terms);
    std::exponential_distribution<double> gamma1(1.0);
    const int terms = count(rng);
    std::vector<double> weights(terms);
    double total = 0;
    for (auto &w : weights) {
        w = gamma1(rng);
        total += w;
    }
    const auto d = static_cast<Eigen::Index>(space.dim());
    Matrix rho = Matrix::Zero(d, d);
    for (int t = 0; t < terms; ++t) {
        const PureState psi = random_product_state(space, rng);
        rho.noalias() += (weights[t] / total) * psi.amplitudes() * psi.amplitudes().adjoint();
    }
    rho = (rho + rho.adjoint()) * 0.5;
    rho /= rho.trace();
    return DensityMatrix::trusted(space, std::move(rho));
}

PureState random_unit_filled_product_state(int n_sites, Rng &rng) {
    const FockLatticeSpec lattice(n_sites, 1);
    const SiteFockSpace &site = lattice.site();
    Matrix v = Matrix::Ones(1, 1);
    for (int k = 0; k < n_sites; ++k) {
        const Vector spin = haar_vector(2, rng);
        Vector local = Vector::Zero(site.dim());
        local(site.index_of(1, 0)) = spin(0);
        local(site.index_of(0, 1)) = spin(1);
        v = kernels::kron(v, local);
    }
    return PureState::normalized(lattice.space(), v.col(0));
}

}  // namespace qlatwit
