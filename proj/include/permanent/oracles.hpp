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

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "permanent/algorithms.hpp"

namespace permanent::oracles {

inline constexpr double macheps = std::numeric_limits<double>::epsilon();

/// Reported by digits_lost when the evaluated value is exactly the truth.
inline constexpr double digits_floor = 0.0;

/// n! / (n-m)!: exact int64 when it fits, nearest double otherwise.
std::variant<std::int64_t, double> ones_permanent(std::size_t m, std::size_t n);

/// Every entry one.
template <typename T>
Matrix<T> ones_matrix(std::size_t m, std::size_t n) {
    return Matrix<T>(m, n, std::vector<T>(m * n, T(1)));
}

/// delta_ij, extra columns zero. Its permanent is exactly 1.
template <typename T>
Matrix<T> identity_matrix(std::size_t m, std::size_t n) {
    Matrix<T> out(m, n);
    for (std::size_t i = 0; i < std::min(m, n); ++i) {
        out(i, i) = T(1);
    }
    return out;
}

inline std::int64_t identity_permanent(std::size_t, std::size_t) { return 1; }

/// C_ij = 1 / (x_i + y_j), x in [0.25, 0.75], y in [-0.75, -0.25].
struct CauchySpec {
    std::vector<double> x;
    std::vector<double> y;
    double condition = std::numeric_limits<double>::infinity();

    std::size_t order() const noexcept { return x.size(); }
};

Matrix<double> cauchy_matrix(const CauchySpec &spec);

/// Determinant by LU factorisation with partial (row) pivoting.
double determinant(const Matrix<double> &a);

/// 1-norm condition number |A|_1 |A^-1|_1; infinity for singular A.
double condition_number(const Matrix<double> &a);

/**
 * @brief Best of `attempts` random Cauchy specs by condition number.
 *
 * Each attempt draws all of x then all of y from one seeded stream, so the
 * result is a pure function of (n, attempts, seed).
 */
CauchySpec sample_cauchy(std::size_t n, std::size_t attempts, std::uint64_t seed);

/// per(C) = det(C o C) / det(C). Throws NumericError if C is numerically singular.
double borchardt_permanent(const CauchySpec &spec);

/**
 * log10(|evaluated - truth| / |truth|) - log10(macheps), or digits_floor when
 * the two agree exactly. Throws NumericError when truth is zero.
 */
double digits_lost(long double evaluated, long double truth);
double digits_lost(const Complex &evaluated, const Complex &truth);

enum class Family { Ones, Identity, Cauchy };

const char *to_string(Family family);

struct PrecisionRecord {
    Family family = Family::Ones;
    AlgorithmId algorithm = AlgorithmId::Ryser;
    std::size_t m = 0;
    std::size_t n = 0;
    ElementKind kind = ElementKind::Float64;
    /// Empty when the computation overflowed.
    std::optional<double> digits;

    bool overflow() const noexcept { return !digits.has_value(); }
};

struct PrecisionOptions {
    std::vector<Family> families = {Family::Ones, Family::Identity, Family::Cauchy};
    std::vector<AlgorithmId> algorithms = {AlgorithmId::Combinatoric, AlgorithmId::Ryser,
                                           AlgorithmId::Glynn};
    std::vector<ElementKind> kinds = {ElementKind::Int64, ElementKind::Float64};
    std::size_t n_min = 1;
    std::size_t n_max = 21;
    /// Combinatoric never runs past this many columns ...
    std::size_t combinatoric_max_cols = 14;
    /// ... nor past this many m-permutations.
    double combinatoric_budget = 1e8;
    std::size_t cauchy_attempts = 1000;
    std::uint64_t seed = 42;
};

/**
 * @brief Digits lost for each (family, algorithm, shape, kind) cell.
 *
 * Ones and identity run every m <= n; Cauchy runs squares only and only as
 * float64. Rows are ordered by (family, algorithm, n, m, kind). Cells outside
 * the combinatoric limits are skipped.
 */
std::vector<PrecisionRecord> run_precision_suite(const PrecisionOptions &options);

/// Header `family,algorithm,m,n,kind,digits_lost,overflow`, one row per record.
void write_precision_csv(std::ostream &out, const std::vector<PrecisionRecord> &records);

}  // namespace permanent::oracles
