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

#include "permanent/combinatorics.hpp"

#include <bit>
#include <limits>
#include <numeric>

#include "permanent/errors.hpp"

namespace permanent {

CombinationCursor::CombinationCursor(std::size_t n, std::size_t k) : n_(n), current_(k) {
    if (k > n) {
        throw UsageError("combination size exceeds universe size");
    }
    std::iota(current_.begin(), current_.end(), std::size_t{0});
}

bool CombinationCursor::next() {
    if (exhausted_) {
        throw UsageError("advancing an exhausted CombinationCursor");
    }
    const std::size_t k = current_.size();
    // Rightmost position that can still move right.
    std::size_t i = k;
    while (i > 0 && current_[i - 1] == n_ - k + (i - 1)) {
        --i;
    }
    if (i == 0) {
        exhausted_ = true;
        return false;
    }
    --i;
    ++current_[i];
    for (std::size_t j = i + 1; j < k; ++j) {
        current_[j] = current_[j - 1] + 1;
    }
    first_changed_ = i;
    return true;
}

SjtPermutationCursor::SjtPermutationCursor(std::size_t n)
    : perm_(n), position_(n), direction_(n, -1) {
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    std::iota(position_.begin(), position_.end(), std::size_t{0});
}

bool SjtPermutationCursor::next() {
    if (exhausted_) {
        throw UsageError("advancing an exhausted SjtPermutationCursor");
    }
    const std::size_t n = perm_.size();
    // Largest mobile value: its neighbour in its direction exists and is smaller.
    std::size_t mobile = n;
    for (std::size_t v = n; v-- > 0;) {
        const std::size_t p = position_[v];
        if (direction_[v] < 0 ? (p > 0 && perm_[p - 1] < v) : (p + 1 < n && perm_[p + 1] < v)) {
            mobile = v;
            break;
        }
    }
    if (mobile == n) {
        exhausted_ = true;
        return false;
    }
    const std::size_t p = position_[mobile];
    const std::size_t q = direction_[mobile] < 0 ? p - 1 : p + 1;
    const std::size_t other = perm_[q];
    std::swap(perm_[p], perm_[q]);
    position_[mobile] = q;
    position_[other] = p;
    last_swap_ = std::min(p, q);
    for (std::size_t v = mobile + 1; v < n; ++v) {
        direction_[v] = static_cast<signed char>(-direction_[v]);
    }
    return true;
}

GrayCursor::GrayCursor(std::size_t n) : n_(n) {
    if (n == 0 || n > 63) {
        throw UsageError("GrayCursor supports 1 to 63 positions");
    }
    last_step_ = (std::uint64_t{1} << (n - 1)) - 1;
}

void GrayCursor::next() {
    if (step_ == last_step_) {
        throw UsageError("GrayCursor advanced past its last sign vector");
    }
    ++step_;
    flipped_ = n_ - 1 - static_cast<std::size_t>(std::countr_zero(step_));
    mask_ ^= std::uint64_t{1} << flipped_;
}

std::int64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        // acc * (n - i) / (i + 1) is exact at every step; acc <= C(n, k) stays in range.
        acc = acc * (n - i) / (i + 1);
        if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
            throw NumericError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                               ") exceeds int64");
        }
    }
    return static_cast<std::int64_t>(acc);
}

std::variant<std::int64_t, double> factorial(std::uint64_t n) {
    if (n <= 20) {
        std::int64_t f = 1;
        for (std::uint64_t i = 2; i <= n; ++i) {
            f *= static_cast<std::int64_t>(i);
        }
        return f;
    }
    return factorial_f64(n);
}

double factorial_f64(std::uint64_t n) { return falling_factorial_f64(n, n); }

double falling_factorial_f64(std::uint64_t n, std::uint64_t m) {
    if (m > n) {
        return 0.0;
    }
    long double f = 1;
    for (std::uint64_t i = n - m + 1; i <= n; ++i) {
        f *= static_cast<long double>(i);
    }
    return static_cast<double>(f);
}

}  // namespace permanent
