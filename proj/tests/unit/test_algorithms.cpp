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

#include <doctest.h>

#include "helpers.hpp"
#include "permanent/algorithms.hpp"
#include "permanent/errors.hpp"

using namespace permanent;
using permanent::testing::close;

namespace {

const Matrix<std::int64_t> sample3(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});

std::int64_t exact(const Matrix<std::int64_t> &a, AlgorithmId alg) {
    const auto r = compute<std::int64_t, std::int64_t>(a, alg);
    REQUIRE_FALSE(r.overflowed);
    return r.value;
}

}  // namespace

TEST_CASE("3x3 sample matrix has permanent 450") {
    CHECK(combinatoric<std::int64_t, std::int64_t>(sample3).value == 450);
    CHECK(combinatoric_square<std::int64_t, std::int64_t>(sample3).value == 450);
    CHECK(ryser_square<std::int64_t, std::int64_t>(sample3).value == 450);
    CHECK(ryser_rectangular<std::int64_t, std::int64_t>(sample3).value == 450);
    CHECK(glynn_square<std::int64_t, std::int64_t>(sample3).value == 450);
    CHECK(glynn_rectangular<std::int64_t, std::int64_t>(sample3).value == 450);
    CHECK(glynn<std::int64_t>(sample3).value == 450.0);
    CHECK(ryser<double>(convert<double>(sample3)).value == 450.0);
}

TEST_CASE("int64 input without an integer type yields a double") {
    static_assert(std::is_same_v<result_t<std::int64_t, void>, double>);
    static_assert(std::is_same_v<result_t<std::int64_t, std::int64_t>, std::int64_t>);
    static_assert(std::is_same_v<result_t<Complex, void>, Complex>);
    CHECK(ryser<std::int64_t>(sample3).value == 450.0);
}

TEST_CASE("hand-computed rectangular permanents") {
    const Matrix<std::int64_t> a(2, 3, {1, 2, 3, 4, 5, 6});
    // 1*5 + 1*6 + 2*4 + 2*6 + 3*4 + 3*5
    for (AlgorithmId alg : all_algorithms) {
        CHECK(exact(a, alg) == 58);
        CHECK(exact(transpose(a), alg) == 58);
    }
    const Matrix<std::int64_t> row(1, 4, {3, -1, 4, 1});
    for (AlgorithmId alg : all_algorithms) {
        CHECK(exact(row, alg) == 7);
        CHECK(exact(transpose(row), alg) == 7);
    }
}

TEST_CASE("algorithms agree with each other and the reference loops") {
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 7; ++n) {
        for (std::size_t m = 1; m <= n; ++m) {
            for (int trial = 0; trial < 4; ++trial) {
                const auto a = testing::random_int_matrix(m, n, rng, -5, 9);
                const std::int64_t want = exact(a, AlgorithmId::Combinatoric);
                for (AlgorithmId alg : all_algorithms) {
                    CHECK(exact(a, alg) == want);
                    const auto ref = reference<std::int64_t, std::int64_t>(a, alg);
                    CHECK(ref.value == want);
                }
                const auto d = convert<double>(a);
                for (AlgorithmId alg : all_algorithms) {
                    CHECK(close(compute<double>(d, alg).value, static_cast<double>(want), 1e-12));
                }
            }
        }
    }
}

TEST_CASE("complex algorithms agree") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t m = 1; m <= n; ++m) {
            const auto a = testing::random_complex_matrix(m, n, rng);
            const Complex want = combinatoric<Complex>(a).value;
            CHECK(close(ryser<Complex>(a).value, want, 1e-10));
            CHECK(close(glynn<Complex>(a).value, want, 1e-10));
            CHECK(close(reference<Complex>(a, AlgorithmId::Glynn).value, want, 1e-10));
            CHECK(close(glynn<Complex>(transpose(a)).value, want, 1e-10));
        }
    }
}

TEST_CASE("permanent is invariant under row and column permutations") {
    std::mt19937_64 rng(3);
    const auto a = testing::random_real_matrix(4, 6, rng);
    Matrix<double> b(4, 6);
    const std::size_t rows[] = {2, 0, 3, 1};
    const std::size_t cols[] = {5, 1, 0, 4, 2, 3};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            b(i, j) = a(rows[i], cols[j]);
        }
    }
    for (AlgorithmId alg : all_algorithms) {
        CHECK(close(compute<double>(a, alg).value, compute<double>(b, alg).value, 1e-12));
    }
}

TEST_CASE("permanent is linear in each row") {
    std::mt19937_64 rng(5);
    auto a = testing::random_real_matrix(3, 5, rng);
    const double before = ryser<double>(a).value;
    for (std::size_t j = 0; j < 5; ++j) {
        a(1, j) *= -2.5;
    }
    CHECK(close(glynn<double>(a).value, -2.5 * before, 1e-12));
}

TEST_CASE("square variants reject rectangular input; rectangular variants accept squares") {
    const Matrix<double> a(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK_THROWS_AS(ryser_square<double>(a), ShapeError);
    CHECK_THROWS_AS(glynn_square<double>(a), ShapeError);
    CHECK_THROWS_AS(combinatoric_square<double>(a), ShapeError);
    const auto s = convert<double>(sample3);
    CHECK(ryser_rectangular<double>(s).value == 450.0);
    CHECK(glynn_rectangular<double>(s).value == 450.0);
    CHECK(combinatoric_rectangular<double>(s).value == 450.0);
}

TEST_CASE("combinatoric refuses work past its budget") {
    const Matrix<double> a(6, 6, std::vector<double>(36, 1.0));
    CHECK_THROWS_AS(combinatoric<double>(a, 100.0), BudgetError);
    CHECK(combinatoric<double>(a, 720.0).value == 720.0);
}

TEST_CASE("reference loops refuse very wide input") {
    const Matrix<double> a(1, 21, std::vector<double>(21, 1.0));
    CHECK_THROWS_AS(reference<double>(a, AlgorithmId::Ryser), BudgetError);
}

TEST_CASE("int64 overflow is flagged exactly where the value leaves int64") {
    auto ones = [](std::size_t m, std::size_t n) {
        return Matrix<std::int64_t>(m, n, std::vector<std::int64_t>(m * n, 1));
    };
    for (AlgorithmId alg : {AlgorithmId::Ryser, AlgorithmId::Glynn}) {
        const auto fits = compute<std::int64_t, std::int64_t>(ones(18, 21), alg);
        CHECK_FALSE(fits.overflowed);
        CHECK(fits.value == 8515157028618240000);
        CHECK(compute<std::int64_t, std::int64_t>(ones(19, 21), alg).overflowed);
        CHECK(compute<std::int64_t, std::int64_t>(ones(21, 21), alg).overflowed);
    }
    const Matrix<std::int64_t> big(3, 3, std::vector<std::int64_t>(9, 3000000000));
    for (AlgorithmId alg : all_algorithms) {
        CHECK(compute<std::int64_t, std::int64_t>(big, alg).overflowed);
    }
}

TEST_CASE("runtime dispatch over element kinds") {
    const AnyMatrix a = sample3;
    CHECK(std::get<std::int64_t>(compute(a, AlgorithmId::Glynn, true).value) == 450);
    CHECK(std::get<double>(compute(a, AlgorithmId::Glynn, false).value) == 450.0);
    const AnyMatrix c = convert<Complex>(sample3);
    CHECK(std::get<Complex>(compute(c, AlgorithmId::Ryser, false).value) == Complex(450, 0));
}

TEST_CASE("algorithm names round-trip") {
    for (AlgorithmId alg : all_algorithms) {
        CHECK(parse_algorithm(to_string(alg)) == alg);
    }
    CHECK_FALSE(parse_algorithm("opt").has_value());
}
