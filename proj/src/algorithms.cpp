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

#include "permanent/algorithms.hpp"

#include <string>

#include "kernels.hpp"
#include "reference_kernels.hpp"

namespace permanent {

const char *to_string(AlgorithmId alg) {
    switch (alg) {
    case AlgorithmId::Combinatoric:
        return "combinatoric";
    case AlgorithmId::Ryser:
        return "ryser";
    case AlgorithmId::Glynn:
        return "glynn";
    }
    return "?";
}

std::optional<AlgorithmId> parse_algorithm(std::string_view name) {
    for (AlgorithmId alg : all_algorithms) {
        if (name == to_string(alg)) {
            return alg;
        }
    }
    return std::nullopt;
}

namespace detail {

wide_int glynn_finish(wide_int sum, std::size_t m, std::size_t n, bool &overflow) {
    if (overflow) {
        return 0;
    }
    wide_int denominator = wide_int(1) << (n - 1);
    for (std::size_t k = 2; k <= n - m; ++k) {
        denominator = mul(denominator, wide_int(k), overflow);
    }
    if (overflow) {
        return 0;
    }
    if (sum % denominator != 0) {
        throw NumericError("Glynn sum is not divisible by its normalisation; integer path corrupted");
    }
    return sum / denominator;
}

}  // namespace detail

namespace {

enum class Form { Any, Square, Rectangular };

enum class Route { Optimised, Reference };

template <typename V, typename Acc>
Result<V> finalize(const Acc &raw, bool overflow) {
    if constexpr (std::is_same_v<V, std::int64_t>) {
        if (overflow || !detail::fits_int64(raw)) {
            return {0, true};
        }
        return {static_cast<std::int64_t>(raw), false};
    } else {
        return {V(raw), false};
    }
}

[[noreturn, gnu::noinline, gnu::cold]] void throw_walk_too_wide(std::size_t n) {
    throw BudgetError(std::to_string(n) + " columns exceed the " +
                      std::to_string(detail::max_walk_cols) + "-column limit");
}

void check_walk_size(std::size_t n) {
    if (n > detail::max_walk_cols) {
        throw_walk_too_wide(n);
    }
}

[[noreturn, gnu::noinline, gnu::cold]] void throw_over_budget(std::size_t m, std::size_t n,
                                                               double budget) {
    throw BudgetError("combinatoric permanent of a " + std::to_string(m) + "x" +
                      std::to_string(n) + " matrix needs " +
                      std::to_string(falling_factorial_f64(n, m)) + " terms, budget is " +
                      std::to_string(budget));
}

template <typename Elem>
detail::accumulator_t<Elem> optimised(const Matrix<Elem> &a, AlgorithmId alg, Form form,
                                      double budget, bool &overflow) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    switch (alg) {
    case AlgorithmId::Combinatoric: {
        double terms = 1;
        for (std::size_t k = 0; k < m; ++k) {
            terms *= static_cast<double>(n - k);
            if (terms > budget) {
                throw_over_budget(m, n, budget);
            }
        }
        return detail::combinatoric_kernel(a, overflow);
    }
    case AlgorithmId::Ryser:
        check_walk_size(n);
        if (m == n && form != Form::Rectangular) {
            return detail::ryser_square_kernel(a, overflow);
        }
        return detail::ryser_rectangular_kernel(a, overflow);
    case AlgorithmId::Glynn:
        check_walk_size(n);
        return detail::glynn_finish(detail::glynn_kernel(a, overflow), m, n, overflow);
    }
    throw UsageError("unknown algorithm");
}

template <typename Elem>
detail::accumulator_t<Elem> transcribed(const Matrix<Elem> &a, AlgorithmId alg, double budget,
                                        bool &overflow) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (n > reference_max_cols) {
        throw BudgetError("reference implementations are limited to " +
                          std::to_string(reference_max_cols) + " columns");
    }
    switch (alg) {
    case AlgorithmId::Combinatoric:
        if (falling_factorial_f64(n, m) > budget) {
            throw BudgetError("combinatoric reference exceeds the term budget");
        }
        return detail::combinatoric_reference(a, overflow);
    case AlgorithmId::Ryser:
        return m == n ? detail::ryser_square_reference(a, overflow)
                      : detail::ryser_rectangular_reference(a, overflow);
    case AlgorithmId::Glynn:
        return detail::glynn_finish(detail::glynn_reference(a, overflow), m, n, overflow);
    }
    throw UsageError("unknown algorithm");
}

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> run(const Matrix<Type> &a, AlgorithmId alg, Form form,
                                    Route route, double budget) {
    using V = result_t<Type, IntType>;
    if (form == Form::Square && !a.is_square()) {
        throw ShapeError("square variant called on a " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " matrix");
    }
    if (a.rows() > a.cols()) {
        return run<Type, IntType>(transpose(a), alg, form, route, budget);
    }
    if constexpr (std::is_same_v<Type, std::int64_t> && std::is_same_v<V, double>) {
        return run<double, void>(convert<double>(a), alg, form, route, budget);
    } else {
        bool overflow = false;
        const auto raw = route == Route::Optimised ? optimised(a, alg, form, budget, overflow)
                                                   : transcribed(a, alg, budget, overflow);
        return finalize<V>(raw, overflow);
    }
}

}  // namespace

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> combinatoric(const Matrix<Type> &a, double budget) {
    return run<Type, IntType>(a, AlgorithmId::Combinatoric, Form::Any, Route::Optimised, budget);
}
template <typename Type, typename IntType>
Result<result_t<Type, IntType>> combinatoric_square(const Matrix<Type> &a, double budget) {
    return run<Type, IntType>(a, AlgorithmId::Combinatoric, Form::Square, Route::Optimised,
                              budget);
}
template <typename Type, typename IntType>
Result<result_t<Type, IntType>> combinatoric_rectangular(const Matrix<Type> &a, double budget) {
    return run<Type, IntType>(a, AlgorithmId::Combinatoric, Form::Rectangular, Route::Optimised,
                              budget);
}

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> ryser(const Matrix<Type> &a) {
    return run<Type, IntType>(a, AlgorithmId::Ryser, Form::Any, Route::Optimised, 0);
}
template <typename Type, typename IntType>
Result<result_t<Type, IntType>> ryser_square(const Matrix<Type> &a) {
    return run<Type, IntType>(a, AlgorithmId::Ryser, Form::Square, Route::Optimised, 0);
}
template <typename Type, typename IntType>
Result<result_t<Type, IntType>> ryser_rectangular(const Matrix<Type> &a) {
    return run<Type, IntType>(a, AlgorithmId::Ryser, Form::Rectangular, Route::Optimised, 0);
}

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> glynn(const Matrix<Type> &a) {
    return run<Type, IntType>(a, AlgorithmId::Glynn, Form::Any, Route::Optimised, 0);
}
template <typename Type, typename IntType>
Result<result_t<Type, IntType>> glynn_square(const Matrix<Type> &a) {
    return run<Type, IntType>(a, AlgorithmId::Glynn, Form::Square, Route::Optimised, 0);
}
template <typename Type, typename IntType>
Result<result_t<Type, IntType>> glynn_rectangular(const Matrix<Type> &a) {
    return run<Type, IntType>(a, AlgorithmId::Glynn, Form::Rectangular, Route::Optimised, 0);
}

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> compute(const Matrix<Type> &a, AlgorithmId alg, double budget) {
    return run<Type, IntType>(a, alg, Form::Any, Route::Optimised, budget);
}

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> reference(const Matrix<Type> &a, AlgorithmId alg) {
    return run<Type, IntType>(a, alg, Form::Any, Route::Reference, default_combinatoric_budget);
}

#define PERMANENT_INSTANTIATE(Type, IntType)                                                     \
    template Result<result_t<Type, IntType>> combinatoric<Type, IntType>(const Matrix<Type> &,    \
                                                                         double);                \
    template Result<result_t<Type, IntType>> combinatoric_square<Type, IntType>(                 \
        const Matrix<Type> &, double);                                                           \
    template Result<result_t<Type, IntType>> combinatoric_rectangular<Type, IntType>(            \
        const Matrix<Type> &, double);                                                           \
    template Result<result_t<Type, IntType>> ryser<Type, IntType>(const Matrix<Type> &);         \
    template Result<result_t<Type, IntType>> ryser_square<Type, IntType>(const Matrix<Type> &);  \
    template Result<result_t<Type, IntType>> ryser_rectangular<Type, IntType>(                   \
        const Matrix<Type> &);                                                                   \
    template Result<result_t<Type, IntType>> glynn<Type, IntType>(const Matrix<Type> &);         \
    template Result<result_t<Type, IntType>> glynn_square<Type, IntType>(const Matrix<Type> &);  \
    template Result<result_t<Type, IntType>> glynn_rectangular<Type, IntType>(                   \
        const Matrix<Type> &);                                                                   \
    template Result<result_t<Type, IntType>> compute<Type, IntType>(const Matrix<Type> &,        \
                                                                    AlgorithmId, double);        \
    template Result<result_t<Type, IntType>> reference<Type, IntType>(const Matrix<Type> &,      \
                                                                      AlgorithmId);

PERMANENT_INSTANTIATE(std::int64_t, void)
PERMANENT_INSTANTIATE(std::int64_t, std::int64_t)
PERMANENT_INSTANTIATE(double, void)
PERMANENT_INSTANTIATE(Complex, void)

#undef PERMANENT_INSTANTIATE

PermanentResult compute(const AnyMatrix &a, AlgorithmId alg, bool integer_result, double budget) {
    return std::visit(
        [&](const auto &m) -> PermanentResult {
            using T = typename std::decay_t<decltype(m)>::value_type;
            if constexpr (std::is_same_v<T, std::int64_t>) {
                if (integer_result) {
                    return PermanentResult::from(compute<T, std::int64_t>(m, alg, budget));
                }
            }
            return PermanentResult::from(compute<T>(m, alg, budget));
        },
        a);
}

}  // namespace permanent
