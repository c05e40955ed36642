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
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace permanent {

/**
 * @brief Lexicographic k-subsets of {0, ..., n-1}.
 *
 * Starts at {0, 1, ..., k-1}. next() moves to the following subset and
 * returns false once the last one ({n-k, ..., n-1}) has been passed.
 * first_changed() reports the lowest position rewritten by the last
 * advance, which lets callers keep prefix data for the untouched positions.
 */
class CombinationCursor {
  public:
    CombinationCursor(std::size_t n, std::size_t k);

    std::span<const std::size_t> current() const noexcept { return current_; }
    bool exhausted() const noexcept { return exhausted_; }
    std::size_t first_changed() const noexcept { return first_changed_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return current_.size(); }

    /// Throws UsageError when called on an exhausted cursor.
    bool next();

  private:
    std::size_t n_;
    std::vector<std::size_t> current_;
    std::size_t first_changed_ = 0;
    bool exhausted_ = false;
};

/**
 * @brief Steinhaus-Johnson-Trotter ("plain changes") permutation order.
 *
 * Consecutive permutations differ by one adjacent transposition; the
 * swapped pair is (last_swap(), last_swap() + 1).
 */
class SjtPermutationCursor {
  public:
    explicit SjtPermutationCursor(std::size_t n);

    std::span<const std::size_t> current() const noexcept { return perm_; }
    bool exhausted() const noexcept { return exhausted_; }
    std::size_t last_swap() const noexcept { return last_swap_; }

    /// Throws UsageError when called on an exhausted cursor.
    bool next();

  private:
    std::vector<std::size_t> perm_;
    std::vector<std::size_t> position_;
    std::vector<signed char> direction_;  // -1 left, +1 right, indexed by value
    std::size_t last_swap_ = 0;
    bool exhausted_ = false;
};

/**
 * @brief Reflected Gray-code walk over sign vectors delta in {+1, -1}^n with delta[0] = +1.
 *
 * Visits all 2^(n-1) vectors, flipping one position per step. Step k flips
 * position n - 1 - ctz(k), the same order produced by the focus-pointer
 * update of the classic Glynn loop. Bit i of mask() set means delta[i] = -1.
 */
class GrayCursor {
  public:
    explicit GrayCursor(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::uint64_t step() const noexcept { return step_; }
    std::uint64_t mask() const noexcept { return mask_; }
    std::uint64_t steps_total() const noexcept { return last_step_; }
    /// Position flipped by the most recent next(); undefined before the first.
    std::size_t flipped() const noexcept { return flipped_; }
    bool negative(std::size_t i) const noexcept { return (mask_ >> i) & 1u; }
    bool done() const noexcept { return step_ == last_step_; }

    /// Flips one sign. Throws UsageError past the last vector.
    void next();

  private:
    std::size_t n_;
    std::uint64_t step_ = 0;
    std::uint64_t last_step_;
    std::uint64_t mask_ = 0;
    std::size_t flipped_ = 0;
};

/// Exact binomial coefficient; 0 when k > n. Throws NumericError past int64.
std::int64_t binomial(std::uint64_t n, std::uint64_t k);

/// n! exactly as int64 for n <= 20, as the nearest double beyond.
std::variant<std::int64_t, double> factorial(std::uint64_t n);

double factorial_f64(std::uint64_t n);

/// n! / (n - m)!, the number of m-permutations of n items, as a double.
double falling_factorial_f64(std::uint64_t n, std::uint64_t m);

}  // namespace permanent
