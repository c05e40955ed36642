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

// Term-by-term transcriptions of the textbook permanent loops. Nothing is
// carried over between terms, so these are slow but structurally
// independent of the optimised kernels they are compared against.

#include <bit>
#include <cstdint>
#include <vector>

#include "arith.hpp"
#include "permanent/combinatorics.hpp"
#include "permanent/matrix.hpp"

namespace permanent::detail {

/// Every m-subset of columns crossed with every permutation of it (plain changes).
template <typename Elem>
accumulator_t<Elem> combinatoric_reference(const Matrix<Elem> &a, bool &overflow) {
    using Acc = accumulator_t<Elem>;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Acc out(0);
    CombinationCursor columns(n, m);
    do {
        const auto chosen = columns.current();
        SjtPermutationCursor order(m);
        do {
            const auto sigma = order.current();
            Acc term(1);
            for (std::size_t i = 0; i < m; ++i) {
                term = mul(term, Acc(a(i, chosen[sigma[i]])), overflow);
            }
            add_to(out, term, overflow);
        } while (order.next());
    } while (columns.next());
    return out;
}

/// Naive loop over all 2^m column subsets of a square matrix.
template <typename Elem>
accumulator_t<Elem> ryser_square_reference(const Matrix<Elem> &a, bool &overflow) {
    using Acc = accumulator_t<Elem>;
    const std::size_t m = a.rows();
    Acc out(0);
    const std::uint64_t c = std::uint64_t{1} << m;
    for (std::uint64_t k = 0; k < c; ++k) {
        Acc rowsumprod(1);
        for (std::size_t i = 0; i < m; ++i) {
            Acc rowsum(0);
            for (std::size_t j = 0; j < m; ++j) {
                if (k & (std::uint64_t{1} << j)) {
                    add_to(rowsum, Acc(a(i, j)), overflow);
                }
            }
            rowsumprod = mul(rowsumprod, rowsum, overflow);
        }
        if (std::popcount(k) & 1) {
            sub_from(out, rowsumprod, overflow);
        } else {
            add_to(out, rowsumprod, overflow);
        }
    }
    if (m & 1u) {
        Acc neg(0);
        sub_from(neg, out, overflow);
        return neg;
    }
    return out;
}

/// Combinations of m-k columns weighted by C(n-m+k, k), alternating in k.
template <typename Elem>
accumulator_t<Elem> ryser_rectangular_reference(const Matrix<Elem> &a, bool &overflow) {
    using Acc = accumulator_t<Elem>;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Acc out(0);
    bool negative = false;
    for (std::size_t k = 0; k < m; ++k) {
        const Acc bin(binomial(n - m + k, k));
        Acc permsum(0);
        CombinationCursor comb(n, m - k);
        do {
            const auto cols = comb.current();
            Acc colprod(1);
            for (std::size_t i = 0; i < m; ++i) {
                Acc matsum(0);
                for (std::size_t j = 0; j < m - k; ++j) {
                    add_to(matsum, Acc(a(i, cols[j])), overflow);
                }
                colprod = mul(colprod, matsum, overflow);
            }
            const Acc term = mul(colprod, bin, overflow);
            if (negative) {
                sub_from(permsum, term, overflow);
            } else {
                add_to(permsum, term, overflow);
            }
        } while (comb.next());
        add_to(out, permsum, overflow);
        negative = !negative;
    }
    return out;
}

/**
 * Sign-flip loop driven by the focus-pointer array `perm`; rows m..n-1 of
 * the square completion are all ones. With m == n this is the square form.
 * Returns the sum before division by 2^(n-1) (n-m)!.
 */
template <typename Elem>
accumulator_t<Elem> glynn_reference(const Matrix<Elem> &a, bool &overflow) {
    using Acc = accumulator_t<Elem>;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::vector<int> delta(n, 1);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = i;
    }

    auto term = [&]() {
        Acc prod(1);
        for (std::size_t j = 0; j < n; ++j) {
            Acc sum(0);
            for (std::size_t i = 0; i < m; ++i) {
                if (delta[i] > 0) {
                    add_to(sum, Acc(a(i, j)), overflow);
                } else {
                    sub_from(sum, Acc(a(i, j)), overflow);
                }
            }
            for (std::size_t k = m; k < n; ++k) {
                add_to(sum, Acc(static_cast<std::int64_t>(delta[k])), overflow);
            }
            prod = mul(prod, sum, overflow);
        }
        return prod;
    };

    Acc out = term();
    const std::size_t bound = n - 1;
    std::size_t pos = 0;
    bool negative = false;
    while (pos != bound) {
        negative = !negative;
        delta[bound - pos] = -delta[bound - pos];
        if (negative) {
            sub_from(out, term(), overflow);
        } else {
            add_to(out, term(), overflow);
        }
        perm[0] = 0;
        perm[pos] = perm[pos + 1];
        ++pos;
        perm[pos] = pos;
        pos = perm[0];
    }
    return out;
}

}  // namespace permanent::detail
