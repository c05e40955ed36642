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

#include <filesystem>
#include <string>
#include <string_view>

#include "permanent/algorithms.hpp"

namespace permanent {

enum class ParamSource { Default, MachineTuned };

const char *to_string(ParamSource source);

/**
 * @brief The eight parameters steering opt's algorithm choice.
 *
 * With r = m / n (m <= n):
 *   n <= p8 (small regime):
 *     m == n and n <= p4             -> combinatoric
 *     p1 r + p2 n + p3 > 0           -> combinatoric
 *     otherwise                      -> glynn
 *   n > p8 (large regime):
 *     p5 r + p6 n + p7 > 0           -> glynn
 *     otherwise                      -> ryser
 */
struct TuningParams {
    double p1 = 0, p2 = 0, p3 = 0;
    double p4 = 0;
    double p5 = 0, p6 = 0, p7 = 0;
    double p8 = 0;
    ParamSource source = ParamSource::Default;
    std::string created_at;
    std::string host;

    friend bool operator==(const TuningParams &, const TuningParams &) = default;
};

/// Throws UsageError naming the violated invariant.
void validate(const TuningParams &params);

/// The compiled-in baseline (regenerated by a PERMANENT_TUNE=ON build).
TuningParams default_params();

/// Exactly the branch structure documented on TuningParams; strict `>` comparisons.
AlgorithmId select_algorithm(std::size_t m, std::size_t n, const TuningParams &params);

/// Dispatches on max(m, n) and min(m, n) / max(m, n).
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> opt(const Matrix<Type> &a, const TuningParams &params);

template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> opt(const Matrix<Type> &a) {
    return opt<Type, IntType>(a, default_params());
}

template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> opt_square(const Matrix<Type> &a, const TuningParams &params);
template <typename Type, typename IntType = void>
Result<result_t<Type, IntType>> opt_rectangular(const Matrix<Type> &a, const TuningParams &params);

PermanentResult opt(const AnyMatrix &a, const TuningParams &params, bool integer_result);

/*
 * Tuning file: one `key=value` per line, keys exactly format_version, source,
 * host, created_at and p1..p8. Floating values use the shortest decimal that
 * round-trips. Blank lines and lines starting with '#' are ignored.
 */
inline constexpr int tuning_format_version = 1;

std::string format_tuning(const TuningParams &params);

/// Throws FormatError naming the offending key or line.
TuningParams parse_tuning(std::string_view text);

/// Throws IoError if the file cannot be read, FormatError if it is malformed.
TuningParams load_tuning_file(const std::filesystem::path &path);

/// Throws IoError if the file cannot be written.
void emit_tuning_file(const TuningParams &params, const std::filesystem::path &path);

}  // namespace permanent
