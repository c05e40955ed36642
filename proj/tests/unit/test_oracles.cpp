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

#include <sstream>

#include "helpers.hpp"
#include "permanent/errors.hpp"
#include "permanent/oracles.hpp"

using namespace permanent;
using namespace permanent::oracles;
using permanent::testing::close;

TEST_CASE("ones permanents") {
    CHECK(std::get<std::int64_t>(ones_permanent(3, 3)) == 6);
    CHECK(std::get<std::int64_t>(ones_permanent(2, 4)) == 12);
    CHECK(std::get<std::int64_t>(ones_permanent(1, 1)) == 1);
    CHECK(std::get<std::int64_t>(ones_permanent(18, 21)) == 8515157028618240000);
    CHECK(std::get<double>(ones_permanent(21, 21)) == doctest::Approx(51090942171709440000.0));
    for (std::size_t n = 1; n <= 9; ++n) {
        for (std::size_t m = 1; m <= n; ++m) {
            const auto r = combinatoric<std::int64_t, std::int64_t>(ones_matrix<std::int64_t>(m, n));
            CHECK(r.value == std::get<std::int64_t>(ones_permanent(m, n)));
        }
    }
}

TEST_CASE("padded identity has zero extra columns and permanent one") {
    const auto a = identity_matrix<std::int64_t>(2, 5);
    for (std::size_t j = 2; j < 5; ++j) {
        CHECK(a(0, j) == 0);
        CHECK(a(1, j) == 0);
    }
    CHECK(a(1, 1) == 1);
    CHECK(identity_permanent(2, 5) == 1);
    CHECK(ryser_rectangular<double>(identity_matrix<double>(2, 5)).value == 1.0);
}

TEST_CASE("determinant and condition number") {
    const Matrix<double> a(3, 3, {2, 0, 1, 1, 3, 2, 1, 1, 2});
    CHECK(determinant(a) == doctest::Approx(6.0));
    const Matrix<double> swap(2, 2, {0, 1, 1, 0});
    CHECK(determinant(swap) == doctest::Approx(-1.0));
    CHECK(condition_number(identity_matrix<double>(4, 4)) == doctest::Approx(1.0));
    const Matrix<double> singular(2, 2, {1, 2, 2, 4});
    CHECK(determinant(singular) == 0.0);
    CHECK(condition_number(singular) == INFINITY);
}

TEST_CASE("Borchardt permanent of a 1x1 Cauchy matrix") {
    const CauchySpec spec{{0.5}, {-0.25}, 1.0};
    CHECK(borchardt_permanent(spec) == doctest::Approx(4.0));
}

TEST_CASE("Borchardt permanent matches brute force") {
    for (std::size_t n = 2; n <= 8; ++n) {
        const CauchySpec spec = sample_cauchy(n, 200, 1000 + n);
        const double want = combinatoric<double>(cauchy_matrix(spec)).value;
        CHECK(close(borchardt_permanent(spec), want, n <= 4 ? 1e-10 : 1e-8));
    }
}

TEST_CASE("Borchardt refuses a singular Cauchy matrix") {
    const CauchySpec spec{{0.5, 0.5}, {-0.3, -0.4}, INFINITY};
    CHECK_THROWS_AS(borchardt_permanent(spec), NumericError);
}

TEST_CASE("Cauchy sampling is seeded, in range and keeps the best draw") {
    const CauchySpec a = sample_cauchy(5, 50, 9);
    CHECK(a.x == sample_cauchy(5, 50, 9).x);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a.x[i] >= 0.25);
        CHECK(a.x[i] <= 0.75);
        CHECK(a.y[i] >= -0.75);
        CHECK(a.y[i] <= -0.25);
    }
    const CauchySpec first = sample_cauchy(5, 1, 9);
    CHECK(a.condition <= first.condition);
    CHECK(first.condition == doctest::Approx(condition_number(cauchy_matrix(first))));
}

TEST_CASE("digits lost") {
    CHECK(digits_lost(3.0L, 3.0L) == digits_floor);
    CHECK(digits_lost(1.0L + macheps, 1.0L) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(digits_lost(1.0L + 1e-6L, 1.0L) == doctest::Approx(9.6536).epsilon(1e-4));
    CHECK(digits_lost(-7.0L * (1.0L + 1e-6L), -7.0L) == doctest::Approx(9.6536).epsilon(1e-4));
    CHECK(digits_lost(Complex(1, 1e-6), Complex(1, 0)) == doctest::Approx(9.6536).epsilon(1e-4));
    CHECK_THROWS_AS(digits_lost(1.0L, 0.0L), NumericError);
}

TEST_CASE("digits lost is unchanged when both values are scaled") {
    const long double e = 1.0L + 3e-9L;
    const double base = digits_lost(e, 1.0L);
    for (long double s : {1e-30L, 7.0L, -3.5e12L}) {
        CHECK(digits_lost(e * s, s) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("small precision suite") {
    PrecisionOptions options;
    options.n_max = 5;
    options.cauchy_attempts = 20;
    const auto records = run_precision_suite(options);
    std::size_t cauchy = 0;
    for (const PrecisionRecord &r : records) {
        CHECK(r.m <= r.n);
        CHECK_FALSE(r.overflow());
        if (r.family == Family::Cauchy) {
            ++cauchy;
            CHECK(r.m == r.n);
            CHECK(r.kind == ElementKind::Float64);
        } else {
            CHECK(*r.digits == digits_floor);
        }
    }
    CHECK(cauchy == 3 * 5);
    // ones and identity: 15 shapes x 3 algorithms x 2 kinds each
    CHECK(records.size() == 2 * 15 * 3 * 2 + cauchy);

    std::ostringstream a;
    std::ostringstream b;
    write_precision_csv(a, records);
    write_precision_csv(b, run_precision_suite(options));
    CHECK(a.str() == b.str());
    CHECK(a.str().starts_with("family,algorithm,m,n,kind,digits_lost,overflow\nones,combinatoric,1,1,int64,0,0\n"));
}

TEST_CASE("precision suite marks int64 overflow") {
    PrecisionOptions options;
    options.families = {Family::Ones};
    options.algorithms = {AlgorithmId::Ryser};
    options.kinds = {ElementKind::Int64};
    options.n_min = 21;
    options.n_max = 21;
    const auto records = run_precision_suite(options);
    REQUIRE(records.size() == 21);
    CHECK_FALSE(records[17].overflow());  // m = 18
    CHECK(records[18].overflow());        // m = 19
    std::ostringstream csv;
    write_precision_csv(csv, records);
    CHECK(csv.str().find("ones,ryser,19,21,int64,,1\n") != std::string::npos);
}
