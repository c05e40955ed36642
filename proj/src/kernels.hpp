/*
 * Copyright 2026 The matrix-permanent Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Optimised permanent kernels. All of them assume rows() <= cols() and
// return the raw accumulated sum; Glynn's normalisation is applied by the
// caller through glynn_finish().

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "arith.hpp"
#include "permanent/combinatorics.hpp"
#include "permanent/matrix.hpp"

namespace permanent::detail {

/// Gray-walk kernels index columns and sign vectors with 64-bit masks.
inline constexpr std::size_t max_walk_cols = 62;

template <typename Elem>
class CombinatoricKernel {
    using Acc = accumulator_t<Elem>;

  public:
    CombinatoricKernel(const Matrix<Elem> &a, bool &overflow) : a_(a), overflow_(overflow) {
        if (a.cols() > small_.size()) {
            heap_.resize(a.cols());
        }
        used_ = a.cols() > small_.size() ? heap_.data() : small_.data();
        std::fill(used_, used_ + a.cols(), char{0});
    }

    Acc run() {
        descend(0, Acc(1));
        return total_;
    }

  private:
    // Prefix product over rows < row is shared by every completion of the prefix.
    void descend(std::size_t row, Acc partial) {
        const std::size_t n = a_.cols();
        const auto entries = a_.row(row);
        if (row + 1 == a_.rows()) {
            Acc free_sum(0);
            for (std::size_t j = 0; j < n; ++j) {
                if (!used_[j]) {
                    add_to(free_sum, Acc(entries[j]), overflow_);
                }
            }
            add_to(total_, mul(partial, free_sum, overflow_), overflow_);
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!used_[j]) {
                used_[j] = 1;
                descend(row + 1, mul(partial, Acc(entries[j]), overflow_));
                used_[j] = 0;
            }
        }
    }

    const Matrix<Elem> &a_;
    std::array<char, 64> small_;
    std::vector<char> heap_;
    char *used_;
    bool &overflow_;
    Acc total_{0};
};

template <typename Elem>
[[gnu::noinline]] accumulator_t<Elem> combinatoric_walk(const Matrix<Elem> &a, bool &overflow) {
    return combinatoric_walk(a, overflow);
}

template <typename Elem>
[[gnu::always_inline]] inline accumulator_t<Elem> combinatoric_kernel(const Matrix<Elem> &a,
                                                                   bool &overflow) {
    if (a.rows() == 1) {
        // Each 1-permutation is a single column.
        accumulator_t<Elem> total(0);
        for (const Elem &x : a.data()) {
            add_to(total, accumulator_t<Elem>(x), overflow);
        }
        return total;
    }
    return CombinatoricKernel<Elem>(a, overflow).run();
}

/**
 * Square Ryser: walk all column subsets in Gray order so each step adds or
 * removes one column from the running row sums.
 */
template <typename Elem>
accumulator_t<Elem> ryser_square_kernel(const Matrix<Elem> &a, bool &overflow) {
    using Acc = accumulator_t<Elem>;
    const std::size_t n = a.rows();
    const Matrix<Elem> columns = transpose(a);
    std::vector<Acc> rowsum(n, Acc(0));
    Acc total(0);
    std::uint64_t subset = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const auto j = static_cast<std::size_t>(std::countr_zero(k));
        const std::uint64_t bit = std::uint64_t{1} << j;
        subset ^= bit;
        const auto col = columns.row(j);
        if (subset & bit) {
            for (std::size_t i = 0; i < n; ++i) {
                add_to(rowsum[i], Acc(col[i]), overflow);
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                sub_from(rowsum[i], Acc(col[i]), overflow);
            }
        }
        Acc prod = rowsum[0];
        for (std::size_t i = 1; i < n; ++i) {
            prod = mul(prod, rowsum[i], overflow);
        }
        // (-1)^|S| per term and an overall (-1)^n.
        if ((n - static_cast<std::size_t>(std::popcount(subset))) & 1u) {
            sub_from(total, prod, overflow);
        } else {
            add_to(total, prod, overflow);
        }
    }
    return total;
}

/**
 * Rectangular Ryser: for every column subset S with 1 <= |S| <= m, weight
 * (-1)^(m-|S|) C(n-|S|, m-|S|) times the product of row sums over S.
 * Subsets are visited depth first in increasing column order, so each one
 * extends its parent's row sums by a single column.
 */
template <typename Elem>
class RyserRectangularKernel {
    using Acc = accumulator_t<Elem>;

  public:
    RyserRectangularKernel(const Matrix<Elem> &a, bool &overflow)
        : a_(a), m_(a.rows()), n_(a.cols()), overflow_(overflow) {
        const std::size_t size = (m_ + 2) * m_ + 1;
        if (size > small_.size()) {
            heap_.resize(size);
        }
        sums_ = size > small_.size() ? heap_.data() : small_.data();
        by_size_ = sums_ + (m_ + 1) * m_;
        std::fill(sums_, sums_ + m_, Acc(0));
        std::fill(by_size_, by_size_ + m_ + 1, Acc(0));
    }

    Acc run() {
        descend(0, 0);
        Acc total(0);
        for (std::size_t size = 1; size <= m_; ++size) {
            const Acc weight(binomial(n_ - size, m_ - size));
            const Acc term = mul(by_size_[size], weight, overflow_);
            if ((m_ - size) & 1u) {
                sub_from(total, term, overflow_);
            } else {
                add_to(total, term, overflow_);
            }
        }
        return total;
    }

  private:
    void descend(std::size_t depth, std::size_t start) {
        const Acc *below = &sums_[depth * m_];
        Acc &sum = by_size_[depth + 1];
        if (depth + 1 == m_) {
            Acc leaves(0);
            for (std::size_t j = start; j < n_; ++j) {
                Acc prod = below[0];
                add_to(prod, Acc(a_(0, j)), overflow_);
                for (std::size_t i = 1; i < m_; ++i) {
                    Acc row = below[i];
                    add_to(row, Acc(a_(i, j)), overflow_);
                    prod = mul(prod, row, overflow_);
                }
                add_to(leaves, prod, overflow_);
            }
            add_to(sum, leaves, overflow_);
            return;
        }
        Acc *level = &sums_[(depth + 1) * m_];
        for (std::size_t j = start; j < n_; ++j) {
            level[0] = below[0];
            add_to(level[0], Acc(a_(0, j)), overflow_);
            Acc prod = level[0];
            for (std::size_t i = 1; i < m_; ++i) {
                level[i] = below[i];
                add_to(level[i], Acc(a_(i, j)), overflow_);
                prod = mul(prod, level[i], overflow_);
            }
            add_to(sum, prod, overflow_);
            descend(depth + 1, j + 1);
        }
    }

    const Matrix<Elem> &a_;
    std::size_t m_;
    std::size_t n_;
    // Row sums for each depth, then the per-size totals.
    std::array<Acc, 64> small_;
    std::vector<Acc> heap_;
    Acc *sums_;
    Acc *by_size_;
    bool &overflow_;
};

template <typename Elem>
[[gnu::noinline]] accumulator_t<Elem> ryser_rectangular_walk(const Matrix<Elem> &a,
                                                              bool &overflow) {
    return RyserRectangularKernel<Elem>(a, overflow).run();
}

template <typename Elem>
[[gnu::always_inline]] inline accumulator_t<Elem> ryser_rectangular_kernel(const Matrix<Elem> &a,
                                                                       bool &overflow) {
    if (a.rows() == 1) {
        // Only single-column subsets, each with weight one.
        accumulator_t<Elem> total(0);
        for (const Elem &x : a.data()) {
            add_to(total, accumulator_t<Elem>(x), overflow);
        }
        return total;
    }
    return ryser_rectangular_walk(a, overflow);
}

/**
 * Glynn over a Gray walk of sign vectors with delta[0] = +1. Rows m..n-1
 * are the implicit all-ones rows of the square completion; they only shift
 * every column sum by the same amount, kept in `ones`.
 */
template <typename Elem>
accumulator_t<Elem> glynn_kernel(const Matrix<Elem> &a, bool &overflow) {
    using Acc = accumulator_t<Elem>;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const bool padded = m < n;

    std::vector<Acc> twice(m * n);
    std::vector<Acc> colsum(n, Acc(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            twice[i * n + j] = mul(Acc(2), Acc(a(i, j)), overflow);
            add_to(colsum[j], Acc(a(i, j)), overflow);
        }
    }
    Acc ones(static_cast<std::int64_t>(n - m));
    const Acc two(2);

    auto product = [&]() {
        if (!padded) {
            Acc prod = colsum[0];
            for (std::size_t j = 1; j < n; ++j) {
                prod = mul(prod, colsum[j], overflow);
            }
            return prod;
        }
        Acc prod = colsum[0];
        add_to(prod, ones, overflow);
        for (std::size_t j = 1; j < n; ++j) {
            Acc s = colsum[j];
            add_to(s, ones, overflow);
            prod = mul(prod, s, overflow);
        }
        return prod;
    };

    Acc total = product();
    bool negative = false;
    GrayCursor walk(n);
    while (!walk.done()) {
        walk.next();
        const std::size_t f = walk.flipped();
        const bool now_negative = walk.negative(f);
        if (f < m) {
            const Acc *row = &twice[f * n];
            if (now_negative) {
                for (std::size_t j = 0; j < n; ++j) {
                    sub_from(colsum[j], row[j], overflow);
                }
            } else {
                for (std::size_t j = 0; j < n; ++j) {
                    add_to(colsum[j], row[j], overflow);
                }
            }
        } else if (now_negative) {
            sub_from(ones, two, overflow);
        } else {
            add_to(ones, two, overflow);
        }
        negative = !negative;
        if (negative) {
            sub_from(total, product(), overflow);
        } else {
            add_to(total, product(), overflow);
        }
    }
    return total;
}

/// Divides a Glynn sum by 2^(n-1) (n-m)!.
inline double glynn_finish(double sum, std::size_t m, std::size_t n, bool &) {
    return sum / std::ldexp(factorial_f64(n - m), static_cast<int>(n - 1));
}

inline Complex glynn_finish(const Complex &sum, std::size_t m, std::size_t n, bool &) {
    return sum / std::ldexp(factorial_f64(n - m), static_cast<int>(n - 1));
}

/// Exact division; a non-zero remainder means the sum itself is wrong.
wide_int glynn_finish(wide_int sum, std::size_t m, std::size_t n, bool &overflow);

}  // namespace permanent::detail
