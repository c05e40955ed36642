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

// Accumulator arithmetic shared by the permanent kernels.
//
// Floating accumulators use plain IEEE operations. The exact integer path
// accumulates in 128 bits and records any overflow in a sticky flag, so a
// kernel can run to completion and report the failure once.

#include <complex>
#include <cstdint>
#include <limits>

#include "permanent/matrix.hpp"

namespace permanent::detail {

using wide_int = __int128;

inline void add_to(double &x, double y, bool &) noexcept { x += y; }
inline void sub_from(double &x, double y, bool &) noexcept { x -= y; }
inline double mul(double x, double y, bool &) noexcept { return x * y; }

inline void add_to(Complex &x, const Complex &y, bool &) noexcept { x += y; }
inline void sub_from(Complex &x, const Complex &y, bool &) noexcept { x -= y; }
// Avoids the NaN-recovery slow path of operator* on std::complex.
inline Complex mul(const Complex &x, const Complex &y, bool &) noexcept {
    return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

inline void add_to(wide_int &x, wide_int y, bool &overflow) noexcept {
    overflow |= __builtin_add_overflow(x, y, &x);
}
inline void sub_from(wide_int &x, wide_int y, bool &overflow) noexcept {
    overflow |= __builtin_sub_overflow(x, y, &x);
}
inline wide_int mul(wide_int x, wide_int y, bool &overflow) noexcept {
    wide_int out;
    overflow |= __builtin_mul_overflow(x, y, &out);
    return out;
}

/// Accumulator type for a matrix element type on a given path.
template <typename Elem>
struct accumulator {
    using type = Elem;
};
template <>
struct accumulator<std::int64_t> {
    using type = wide_int;
};
template <typename Elem>
using accumulator_t = typename accumulator<Elem>::type;

inline bool fits_int64(wide_int x) noexcept {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace permanent::detail
