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

// Random states for property tests: Haar-uniform local states, product
// states, and Dirichlet-weighted mixtures of product states.

#ifndef QLATWIT_SAMPLING_H
#define QLATWIT_SAMPLING_H

#include <random>

#include "qlatwit/bosonic.h"
#include "qlatwit/qcore.h"

namespace qlatwit {

using Rng = std::mt19937_64;

/// Haar-uniform unit vector of length `dim`.
Vector haar_vector(int dim, Rng &rng);
PureState haar_state(const HilbertSpace &space, Rng &rng);

/// Random Hermitian matrix with Gaussian entries.
Matrix random_hermitian(int dim, Rng &rng);

/// Product of independent Haar-random site states over `space`.
PureState random_product_state(const HilbertSpace &space, Rng &rng);

/// Mixture of 1..max_terms random product states with flat Dirichlet weights.
DensityMatrix random_separable_state(const HilbertSpace &space, int max_terms, Rng &rng);

/// Product state over a cutoff-1 lattice with exactly one atom per site.
PureState random_unit_filled_product_state(int n_sites, Rng &rng);

}  // namespace qlatwit

#endif
