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

// OpenMP kernels against their serial references on qubit chains of
// 6..10 sites. Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "qlatwit/kernels.h"
#include "qlatwit/sampling.h"

namespace {

using namespace qlatwit;

struct Fixture {
    explicit Fixture(int n) : dims(n, 2), keep(new bool[n]) {
        Rng rng(static_cast<std::uint64_t>(n));
        const int d = 1 << n;
        rho = random_hermitian(d, rng);
        other = random_hermitian(d, rng);
        v = haar_vector(d, rng);
        for (int k = 0; k < n; ++k) keep[k] = k % 2 == 0;
        phases = Vector::Ones(d);
        for (int i = 0; i < d; ++i)
            if (i % 3 == 0) phases(i) = Complex(0, 1);
        local = Matrix::Zero(2, 2);
        local << 0, 1, 1, 0;
    }
    std::span<const bool> mask() const { return {keep.get(), dims.size()}; }

    std::vector<int> dims;
    std::unique_ptr<bool[]> keep;
    Matrix rho, other, local;
    Vector v, phases;
};

template <bool Parallel>
void BM_TraceProduct(benchmark::State &state) {
    const Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::trace_product(f.rho, f.other)
                                          : kernels::reference::trace_product(f.rho, f.other));
    }
}

template <bool Parallel>
void BM_Matvec(benchmark::State &state) {
    const Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::matvec(f.rho, f.v) : kernels::reference::matvec(f.rho, f.v));
    }
}

template <bool Parallel>
void BM_PartialTrace(benchmark::State &state) {
    const Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::partial_trace(f.rho, f.dims, f.mask())
                                          : kernels::reference::partial_trace(f.rho, f.dims, f.mask()));
    }
}

template <bool Parallel>
void BM_PartialTranspose(benchmark::State &state) {
    const Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::partial_transpose(f.rho, f.dims, f.mask())
                                          : kernels::reference::partial_transpose(f.rho, f.dims, f.mask()));
    }
}

template <bool Parallel>
void BM_ConjugateLocal(benchmark::State &state) {
    const Fixture f(static_cast<int>(state.range(0)));
    Matrix work = f.rho;
    const int site = static_cast<int>(f.dims.size()) / 2;
    for (auto _ : state) {
        if (Parallel) {
            kernels::conjugate_local(work, f.dims, site, f.local);
        } else {
            kernels::reference::conjugate_local(work, f.dims, site, f.local);
        }
        benchmark::ClobberMemory();
    }
}

template <bool Parallel>
void BM_ConjugateDiagonal(benchmark::State &state) {
    const Fixture f(static_cast<int>(state.range(0)));
    Matrix work = f.rho;
    for (auto _ : state) {
        if (Parallel) {
            kernels::conjugate_diagonal(work, f.phases);
        } else {
            kernels::reference::conjugate_diagonal(work, f.phases);
        }
        benchmark::ClobberMemory();
    }
}

#define QLATWIT_PAIR(name)                                                  \
    BENCHMARK(name<true>)->Name(#name "/parallel")->DenseRange(6, 10, 2);   \
    BENCHMARK(name<false>)->Name(#name "/serial")->DenseRange(6, 10, 2)

QLATWIT_PAIR(BM_TraceProduct);
QLATWIT_PAIR(BM_Matvec);
QLATWIT_PAIR(BM_PartialTrace);
QLATWIT_PAIR(BM_PartialTranspose);
QLATWIT_PAIR(BM_ConjugateLocal);
QLATWIT_PAIR(BM_ConjugateDiagonal);

}  // namespace

BENCHMARK_MAIN();
