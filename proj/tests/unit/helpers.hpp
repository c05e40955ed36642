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

#include <random>

#include "permanent/matrix.hpp"

namespace permanent::testing {

inline Matrix<std::int64_t> random_int_matrix(std::size_t m, std::size_t n, std::mt19937_64 &rng,
                                              std::int64_t lo = 0, std::int64_t hi = 9) {
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    Matrix<std::int64_t> a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = dist(rng);
        }
    }
    return a;
}

inline Matrix<double> random_real_matrix(std::size_t m, std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix<double> a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = dist(rng);
        }
    }
    return a;
}

inline Matrix<Complex> random_complex_matrix(std::size_t m, std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix<Complex> a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = Complex(dist(rng), dist(rng));
        }
    }
    return a;
}

inline bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline bool close(Complex a, Complex b, double rel) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace permanent::testing
