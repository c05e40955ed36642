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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permanent/algorithms.hpp"

namespace permanent::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_overflow = 3;
inline constexpr int exit_io_error = 4;

enum class Subcommand { Compute, Tune, Bench, Precision };

enum class Form { Any, Square, Rectangular };

/// `--algorithm` value; an empty algorithm means opt.
struct AlgorithmChoice {
    std::optional<AlgorithmId> algorithm;
    Form form = Form::Any;
};

/// Accepts combinatoric, ryser, glynn and opt, each optionally suffixed _square or _rectangular.
std::optional<AlgorithmChoice> parse_algorithm_choice(std::string_view text);

struct CliConfig {
    Subcommand subcommand = Subcommand::Compute;
    std::string input_path;
    std::string inline_matrix;
    AlgorithmChoice algorithm;
    std::string tuning_file;
    std::string output;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t trials = 5;
    std::size_t n_max = 0;
    std::size_t cauchy_attempts = 1000;
    bool verbose = false;
};

/**
 * @brief Parses the text matrix format.
 *
 * Rows are separated by ';' or newlines and elements by whitespace. Integers
 * give an int64 matrix; any element containing '.', 'e' or 'E' makes it
 * float64; any element ending in 'i' (a+bi) makes it complex. Throws
 * FormatError on ragged rows or unreadable elements.
 */
AnyMatrix parse_matrix(std::string_view text);

int cmd_compute(const CliConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_tune(const CliConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_bench(const CliConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_precision(const CliConfig &cfg, std::ostream &out, std::ostream &err);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace permanent::cli
