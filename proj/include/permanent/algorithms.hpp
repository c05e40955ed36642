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

#include <array>
#include <optional>
#include <string_view>

#include "permanent/matrix.hpp"
#include "permanent/result.hpp"

namespace permanent {

enum class AlgorithmId { Combinatoric, Ryser, Glynn };

inline constexpr std::array<AlgorithmId, 3> all_algorithms = {
    AlgorithmId::Combinatoric, AlgorithmId::Ryser, AlgorithmId::Glynn};

const char *to_string(AlgorithmId alg);
std::optional<AlgorithmId> parse_algorithm(std::string_view name);

/// Largest number of m-permutations the combinatoric kernel agrees to enumerate.
inline constexpr double default_combinatoric_budget = 1e11;

/// Largest column count accepted by the reference transcriptions.
inline constexpr std::size_t reference_max_cols = 20;

/*
 * Every entry point below accepts any m-by-n matrix and evaluates
 * per(A^T) when m > n. The _square forms throw ShapeError unless m == n;
 * the _rectangular forms run the general m <= n kernel even when m == n.
 *
 * With Type = int64 and IntType = int64 the computation is exact: all
 * intermediates are 128-bit with checked arithmetic and the result carries
 * overflowed = true if anything left range or the permanent does not fit
 * in int64.
 */

/// Sum over all m-permutations of the column indices. Throws BudgetError past `budget` terms.
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> combinatoric(const Matrix<Type> &a,
                                             double budget = default_combinatoric_budget);
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> combinatoric_square(const Matrix<Type> &a,
                                                    double budget = default_combinatoric_budget);
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> combinatoric_rectangular(
    const Matrix<Type> &a, double budget = default_combinatoric_budget);

/// Inclusion-exclusion over column subsets, O(2^n n) for squares.
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> ryser(const Matrix<Type> &a);
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> ryser_square(const Matrix<Type> &a);
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> ryser_rectangular(const Matrix<Type> &a);

/// Signed column-sum products over a Gray-code walk of +-1 vectors, O(2^(n-1) n).
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> glynn(const Matrix<Type> &a);
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> glynn_square(const Matrix<Type> &a);
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> glynn_rectangular(const Matrix<Type> &a);

template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> compute(const Matrix<Type> &a, AlgorithmId alg,
                                        double budget = default_combinatoric_budget);

/**
 * @brief Straightforward transcriptions of the textbook loops, kept as oracles.
 *
 * Ryser: naive subset loop (square) and per-size combination loop with
 * binomial weights (rectangular). Glynn: the perm-array sign-flip loop with
 * column sums recomputed from scratch at every step. Combinatoric: every
 * m-subset of columns crossed with every permutation in plain-changes order.
 * None of them reuse work between terms. Throws BudgetError for more than
 * reference_max_cols columns.
 */
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> reference(const Matrix<Type> &a, AlgorithmId alg);

/// Run-time dispatch on the element kind. integer_result selects the exact int64 path.
PermanentResult compute(const AnyMatrix &a, AlgorithmId alg, bool integer_result,
                        double budget = default_combinatoric_budget);

}  // namespace permanent
