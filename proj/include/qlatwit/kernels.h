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

// Dense tensor-product kernels.
//
// Every kernel has an OpenMP implementation in `qlatwit::kernels` and a plain
// serial implementation in `qlatwit::kernels::reference`. The reference
// versions are the ground truth for tests and the baseline for benchmarks; the
// library itself calls the parallel versions.
//
// Site layout: `dims[0]` is the most significant digit of a basis index.
// Site arguments here are 0-based.

#ifndef QLATWIT_KERNELS_H
#define QLATWIT_KERNELS_H

#include <span>
#include <vector>

#include "qlatwit/qcore.h"

namespace qlatwit::kernels {

/// Tr(a * b).
Complex trace_product(const Matrix &a, const Matrix &b);
/// v^dagger * m * v.
Complex quadratic_form(const Matrix &m, const Vector &v);
/// m * v.
Vector matvec(const Matrix &m, const Vector &v);
/// Kronecker product a (x) b.
Matrix kron(const Matrix &a, const Matrix &b);
/// Reduced matrix over the sites flagged in `keep`, preserving their order.
Matrix partial_trace(const Matrix &rho, std::span<const int> dims, std::span<const bool> keep);
/// Transposes the tensor factors flagged in `transpose`.
Matrix partial_transpose(const Matrix &rho, std::span<const int> dims, std::span<const bool> transpose);
/// rho <- L rho L^dagger with L = local acting on `site`.
void conjugate_local(Matrix &rho, std::span<const int> dims, int site, const Matrix &local);
/// rho <- D rho D^dagger with D = diag(phases).
void conjugate_diagonal(Matrix &rho, const Vector &phases);

namespace reference {

Complex trace_product(const Matrix &a, const Matrix &b);
Complex quadratic_form(const Matrix &m, const Vector &v);
Vector matvec(const Matrix &m, const Vector &v);
Matrix kron(const Matrix &a, const Matrix &b);
Matrix partial_trace(const Matrix &rho, std::span<const int> dims, std::span<const bool> keep);
Matrix partial_transpose(const Matrix &rho, std::span<const int> dims, std::span<const bool> transpose);
void conjugate_local(Matrix &rho, std::span<const int> dims, int site, const Matrix &local);
void conjugate_diagonal(Matrix &rho, const Vector &phases);

}  // namespace reference

/// Splits basis indices into per-site digits and back.
class MixedRadix {
   public:
    explicit MixedRadix(std::span<const int> dims);

    std::size_t size() const { return size_; }
    std::size_t stride(int site) const { return strides_[site]; }
    int digit(std::size_t index, int site) const {
        return static_cast<int>((index / strides_[site]) % static_cast<std::size_t>(dims_[site]));
    }

   private:
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 1;
};

}  // namespace qlatwit::kernels

#endif
