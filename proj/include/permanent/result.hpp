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
#include <string>
#include <type_traits>
#include <variant>

#include "permanent/matrix.hpp"

namespace permanent {

namespace detail {

template <typename Type, typename IntType>
struct result_type {
    static_assert(std::is_void_v<IntType>, "IntType is only meaningful for integer inputs");
    using type = std::conditional_t<std::is_same_v<Type, Complex>, Complex, double>;
};

template <>
struct result_type<std::int64_t, void> {
    using type = double;
};

template <>
struct result_type<std::int64_t, std::int64_t> {
    using type = std::int64_t;
};

}  // namespace detail

/**
 * Result value type for an input element type.
 *
 * Integer input yields double unless an integer result type is requested
 * explicitly through IntType; double yields double; complex yields complex.
 */
template <typename Type, typename IntType = void>
using result_t = typename detail::result_type<Type, IntType>::type;

/**
 * @brief A permanent value together with the overflow flag of the exact path.
 *
 * overflowed is only ever set on the integer path: some exact intermediate
 * left the representable range, or the final value does not fit in int64.
 * When it is set, value is unspecified.
 */
template <typename V>
struct Result {
    V value{};
    bool overflowed = false;
};

/// Run-time counterpart of Result<V> for callers working with AnyMatrix.
struct PermanentResult {
    std::variant<std::int64_t, double, Complex> value;
    bool overflowed = false;

    template <typename V>
    static PermanentResult from(const Result<V> &r) {
        return {r.value, r.overflowed};
    }
};

ElementKind kind_of(const PermanentResult &r);

/// Plain integer for int64 values, shortest round-trip scientific otherwise.
std::string format_value(const PermanentResult &r);

}  // namespace permanent
