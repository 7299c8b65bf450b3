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

#include "qlatwit/kernels.h"

#include <cstdint>
#include <stdexcept>

namespace qlatwit::kernels {

MixedRadix::MixedRadix(std::span<const int> dims) : dims_(dims.begin(), dims.end()), strides_(dims.size()) {
    for (std::size_t k = dims_.size(); k-- > 0;) {
        strides_[k] = size_;
        size_ *= static_cast<std::size_t>(dims_[k]);
    }
}

namespace {

// Lists the offset each combination of digits of the selected sites
// contributes to a full basis index.
template <typename Selected>
std::vector<std::size_t> digit_offsets(std::span<const int> dims, Selected selected) {
    MixedRadix radix(dims);
    std::vector<std::size_t> offsets{0};
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (!selected(k)) {
            continue;
        }
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * dims[k]);
        for (std::size_t base : offsets) {
            for (int d = 0; d < dims[k]; ++d) {
                next.push_back(base + d * radix.stride(static_cast<int>(k)));
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

std::vector<std::size_t> digit_offsets(std::span<const int> dims, std::span<const bool> mask, bool want) {
    return digit_offsets(dims, [&](std::size_t k) { return mask[k] == want; });
}

void check_square(const Matrix &m, std::size_t dim, const char *what) {
    if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
        throw std::invalid_argument(std::string(what) + ": matrix does not match site dimensions");
    }
}

// Indices whose digit at `site` is zero; each is the base of a d-element fiber.
std::vector<std::size_t> fiber_bases(std::span<const int> dims, int site) {
    return digit_offsets(dims, [&](std::size_t k) { return static_cast<int>(k) != site; });
}

}  // namespace

Complex trace_product(const Matrix &a, const Matrix &b) {
    const std::int64_t n = a.rows();
    double re = 0, im = 0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        Complex acc = 0;
        // b(j, i) with fixed i walks a column of b; a(i, j) walks a row of a.
        for (std::int64_t j = 0; j < n; ++j) {
            acc += a(i, j) * b(j, i);
        }
        re += acc.real();
        im += acc.imag();
    }
    return {re, im};
}

Complex quadratic_form(const Matrix &m, const Vector &v) {
    const std::int64_t n = m.rows();
    double re = 0, im = 0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
    for (std::int64_t j = 0; j < n; ++j) {
        Complex col = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            col += std::conj(v(i)) * m(i, j);
        }
        col *= v(j);
        re += col.real();
        im += col.imag();
    }
    return {re, im};
}

Vector matvec(const Matrix &m, const Vector &v) {
    const std::int64_t n = m.rows();
    Vector out = Vector::Zero(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        Complex acc = 0;
        for (std::int64_t j = 0; j < m.cols(); ++j) {
            acc += m(i, j) * v(j);
        }
        out(i) = acc;
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    const std::int64_t ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    Matrix out(ar * br, ac * bc);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < ac; ++j) {
        for (std::int64_t i = 0; i < ar; ++i) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

Matrix partial_trace(const Matrix &rho, std::span<const int> dims, std::span<const bool> keep) {
    MixedRadix radix(dims);
    check_square(rho, radix.size(), "partial_trace");
    const auto kept = digit_offsets(dims, keep, true);
    const auto traced = digit_offsets(dims, keep, false);
    const std::int64_t nk = static_cast<std::int64_t>(kept.size());
    Matrix out(nk, nk);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < nk; ++j) {
        for (std::int64_t i = 0; i < nk; ++i) {
            Complex acc = 0;
            for (std::size_t t : traced) {
                acc += rho(kept[i] + t, kept[j] + t);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

Matrix partial_transpose(const Matrix &rho, std::span<const int> dims, std::span<const bool> transpose) {
    MixedRadix radix(dims);
    check_square(rho, radix.size(), "partial_transpose");
    const auto moved = digit_offsets(dims, transpose, true);
    const auto fixed = digit_offsets(dims, transpose, false);
    const std::int64_t nm = static_cast<std::int64_t>(moved.size());
    Matrix out(rho.rows(), rho.cols());
    // Element (f_i + m_i, f_j + m_j) goes to (f_i + m_j, f_j + m_i).
#pragma omp parallel for schedule(static)
    for (std::int64_t mj = 0; mj < nm; ++mj) {
        for (std::size_t fj : fixed) {
            for (std::int64_t mi = 0; mi < nm; ++mi) {
                for (std::size_t fi : fixed) {
                    out(fi + moved[mj], fj + moved[mi]) = rho(fi + moved[mi], fj + moved[mj]);
                }
            }
        }
    }
    return out;
}

void conjugate_local(Matrix &rho, std::span<const int> dims, int site, const Matrix &local) {
    MixedRadix radix(dims);
    check_square(rho, radix.size(), "conjugate_local");
    const int d = dims[site];
    if (local.rows() != d || local.cols() != d) {
        throw std::invalid_argument("conjugate_local: local operator does not match site dimension");
    }
    const std::size_t stride = radix.stride(site);
    const auto bases = fiber_bases(dims, site);
    const std::int64_t n = rho.rows();
    const std::int64_t nb = static_cast<std::int64_t>(bases.size());
    const Matrix local_conj = local.conjugate();

    // Left multiplication, column by column.
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < n; ++c) {
        Eigen::VectorXcd buf(d);
        for (std::size_t base : bases) {
            for (int a = 0; a < d; ++a) {
                buf(a) = rho(base + a * stride, c);
            }
            for (int a = 0; a < d; ++a) {
                Complex acc = 0;
                for (int b = 0; b < d; ++b) {
                    acc += local(a, b) * buf(b);
                }
                rho(base + a * stride, c) = acc;
            }
        }
    }
    // Right multiplication by L^dagger: (X L^dagger)(r, a) = sum_b X(r, b) conj(L(a, b)).
#pragma omp parallel for schedule(static)
    for (std::int64_t bi = 0; bi < nb; ++bi) {
        const std::size_t base = bases[bi];
        Eigen::VectorXcd buf(d);
        for (std::int64_t r = 0; r < n; ++r) {
            for (int a = 0; a < d; ++a) {
                buf(a) = rho(r, base + a * stride);
            }
            for (int a = 0; a < d; ++a) {
                Complex acc = 0;
                for (int b = 0; b < d; ++b) {
                    acc += buf(b) * local_conj(a, b);
                }
                rho(r, base + a * stride) = acc;
            }
        }
    }
}

void conjugate_diagonal(Matrix &rho, const Vector &phases) {
    const std::int64_t n = rho.rows();
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n; ++j) {
        const Complex right = std::conj(phases(j));
        for (std::int64_t i = 0; i < n; ++i) {
            rho(i, j) *= phases(i) * right;
        }
    }
}

namespace reference {

Complex trace_product(const Matrix &a, const Matrix &b) {
    Complex acc = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * b(j, i);
        }
    }
    return acc;
}

Complex quadratic_form(const Matrix &m, const Vector &v) {
    Complex acc = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            acc += std::conj(v(i)) * m(i, j) * v(j);
        }
    }
    return acc;
}

Vector matvec(const Matrix &m, const Vector &v) {
    Vector out = Vector::Zero(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out(i) += m(i, j) * v(j);
        }
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
        }
    }
    return out;
}

Matrix partial_trace(const Matrix &rho, std::span<const int> dims, std::span<const bool> keep) {
    MixedRadix radix(dims);
    check_square(rho, radix.size(), "partial_trace");
    std::size_t kept_dim = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
            kept_dim *= dims[k];
        }
    }
    // Index of the kept digits of `index`, big-endian over kept sites.
    auto kept_index = [&](std::size_t index) {
        std::size_t out = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (keep[k]) {
                out = out * dims[k] + radix.digit(index, static_cast<int>(k));
            }
        }
        return out;
    };
    auto traced_equal = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (!keep[k] && radix.digit(i, static_cast<int>(k)) != radix.digit(j, static_cast<int>(k))) {
                return false;
            }
        }
        return true;
    };
    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (std::size_t i = 0; i < radix.size(); ++i) {
        for (std::size_t j = 0; j < radix.size(); ++j) {
            if (traced_equal(i, j)) {
                out(kept_index(i), kept_index(j)) += rho(i, j);
            }
        }
    }
    return out;
}

Matrix partial_transpose(const Matrix &rho, std::span<const int> dims, std::span<const bool> transpose) {
    MixedRadix radix(dims);
    check_square(rho, radix.size(), "partial_transpose");
    Matrix out(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < radix.size(); ++i) {
        for (std::size_t j = 0; j < radix.size(); ++j) {
            std::size_t ti = 0, tj = 0;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                int di = radix.digit(i, static_cast<int>(k));
                int dj = radix.digit(j, static_cast<int>(k));
                if (transpose[k]) {
                    std::swap(di, dj);
                }
                ti = ti * dims[k] + di;
                tj = tj * dims[k] + dj;
            }
            out(ti, tj) = rho(i, j);
        }
    }
    return out;
}

void conjugate_local(Matrix &rho, std::span<const int> dims, int site, const Matrix &local) {
    Matrix full = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const Matrix factor = static_cast<int>(k) == site ? local : Matrix::Identity(dims[k], dims[k]);
        full = reference::kron(full, factor);
    }
    check_square(rho, static_cast<std::size_t>(full.rows()), "conjugate_local");
    rho = full * rho * full.adjoint();
}

void conjugate_diagonal(Matrix &rho, const Vector &phases) {
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            rho(i, j) = phases(i) * rho(i, j) * std::conj(phases(j));
        }
    }
}

}  // namespace reference

}  // namespace qlatwit::kernels
