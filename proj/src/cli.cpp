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

#include "permanent/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "permanent/dispatch.hpp"
#include "permanent/errors.hpp"
#include "permanent/oracles.hpp"
#include "permanent/tuner.hpp"

namespace permanent::cli {

std::optional<AlgorithmChoice> parse_algorithm_choice(std::string_view text) {
    AlgorithmChoice choice;
    auto strip = [&](std::string_view suffix, Form form) {
        if (text.size() > suffix.size() && text.ends_with(suffix)) {
            text.remove_suffix(suffix.size());
            choice.form = form;
        }
    };
    strip("_square", Form::Square);
    strip("_rectangular", Form::Rectangular);
    if (text == "opt") {
        return choice;
    }
    choice.algorithm = parse_algorithm(text);
    if (!choice.algorithm) {
        return std::nullopt;
    }
    return choice;
}

namespace {

bool parse_double(std::string_view s, double &out) {
    if (s.empty()) {
        return false;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

Complex parse_complex(std::string_view token) {
    std::string_view body = token.substr(0, token.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string_view re_text = split == std::string_view::npos ? "" : body.substr(0, split);
    std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);
    double re = 0;
    double im = 0;
    if (!re_text.empty() && !parse_double(re_text, re)) {
        throw FormatError("cannot parse element '" + std::string(token) + "'");
    }
    if (im_text.empty() || im_text == "+") {
        im = 1;
    } else if (im_text == "-") {
        im = -1;
    } else if (!parse_double(im_text, im)) {
        throw FormatError("cannot parse element '" + std::string(token) + "'");
    }
    return {re, im};
}

std::vector<std::string_view> split_rows(std::string_view text) {
    std::vector<std::string_view> rows;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ';' || text[i] == '\n') {
            rows.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return rows;
}

std::vector<std::string_view> split_ws(std::string_view row) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < row.size()) {
        while (i < row.size() && std::isspace(static_cast<unsigned char>(row[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < row.size() && !std::isspace(static_cast<unsigned char>(row[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back(row.substr(start, i - start));
        }
    }
    return out;
}

}  // namespace

AnyMatrix parse_matrix(std::string_view text) {
    std::vector<std::vector<std::string_view>> rows;
    for (std::string_view row : split_rows(text)) {
        auto tokens = split_ws(row);
        if (tokens.empty()) {
            continue;
        }
        if (!rows.empty() && tokens.size() != rows.front().size()) {
            throw FormatError("row " + std::to_string(rows.size() + 1) + " has " +
                              std::to_string(tokens.size()) + " elements, expected " +
                              std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(tokens));
    }
    if (rows.empty()) {
        throw FormatError("empty matrix");
    }
    ElementKind kind = ElementKind::Int64;
    for (const auto &row : rows) {
        for (std::string_view t : row) {
            if (t.back() == 'i') {
                kind = ElementKind::ComplexFloat64;
            } else if (kind == ElementKind::Int64 &&
                       t.find_first_of(".eE") != std::string_view::npos) {
                kind = ElementKind::Float64;
            }
        }
    }
    std::vector<Element> elements;
    for (const auto &row : rows) {
        for (std::string_view t : row) {
            if (t.back() == 'i') {
                elements.emplace_back(parse_complex(t));
                continue;
            }
            if (kind == ElementKind::Int64) {
                std::int64_t v = 0;
                std::string_view s = t.front() == '+' ? t.substr(1) : t;
                const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
                if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
                    throw FormatError("cannot parse integer '" + std::string(t) + "'");
                }
                elements.emplace_back(v);
                continue;
            }
            double v = 0;
            if (!parse_double(t, v)) {
                throw FormatError("cannot parse number '" + std::string(t) + "'");
            }
            if (kind == ElementKind::ComplexFloat64) {
                elements.emplace_back(Complex(v, 0));
            } else {
                elements.emplace_back(v);
            }
        }
    }
    return make_matrix(rows.size(), rows.front().size(), elements);
}

namespace {

template <typename T, typename I>
Result<result_t<T, I>> evaluate(const Matrix<T> &a, const AlgorithmChoice &choice,
                                const TuningParams &params) {
    if (!choice.algorithm) {
        switch (choice.form) {
        case Form::Square:
            return opt_square<T, I>(a, params);
        case Form::Rectangular:
            return opt_rectangular<T, I>(a, params);
        case Form::Any:
            return opt<T, I>(a, params);
        }
    }
    switch (*choice.algorithm) {
    case AlgorithmId::Combinatoric:
        return choice.form == Form::Square        ? combinatoric_square<T, I>(a)
               : choice.form == Form::Rectangular ? combinatoric_rectangular<T, I>(a)
                                                  : combinatoric<T, I>(a);
    case AlgorithmId::Ryser:
        return choice.form == Form::Square        ? ryser_square<T, I>(a)
               : choice.form == Form::Rectangular ? ryser_rectangular<T, I>(a)
                                                  : ryser<T, I>(a);
    case AlgorithmId::Glynn:
        break;
    }
    return choice.form == Form::Square        ? glynn_square<T, I>(a)
           : choice.form == Form::Rectangular ? glynn_rectangular<T, I>(a)
                                              : glynn<T, I>(a);
}

PermanentResult evaluate_any(const AnyMatrix &a, const AlgorithmChoice &choice,
                             const TuningParams &params) {
    return std::visit(
        [&](const auto &m) -> PermanentResult {
            using T = typename std::decay_t<decltype(m)>::value_type;
            if constexpr (std::is_same_v<T, std::int64_t>) {
                return PermanentResult::from(evaluate<T, std::int64_t>(m, choice, params));
            } else {
                return PermanentResult::from(evaluate<T, void>(m, choice, params));
            }
        },
        a);
}

bool finite(const PermanentResult &r) {
    return std::visit(
        [](const auto &v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::int64_t>) {
                return true;
            } else if constexpr (std::is_same_v<V, Complex>) {
                return std::isfinite(v.real()) && std::isfinite(v.imag());
            } else {
                return std::isfinite(v);
            }
        },
        r.value);
}

std::string read_text(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs `body`, mapping library exceptions onto the exit-code contract.
template <typename F>
int guarded(std::ostream &err, F &&body) {
    try {
        return body();
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return exit_io_error;
    } catch (const NumericError &e) {
        err << "error: " << e.what() << '\n';
        return exit_overflow;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
}

// Writes through `emit` to --output when given, else to `out`.
template <typename F>
void write_output(const CliConfig &cfg, std::ostream &out, F &&emit) {
    if (cfg.output.empty()) {
        emit(out);
        return;
    }
    std::ofstream file(cfg.output);
    if (!file) {
        throw IoError("cannot write " + cfg.output);
    }
    emit(file);
    file.flush();
    if (!file) {
        throw IoError("failed writing " + cfg.output);
    }
}

tuner::GridSpec grid_for(const CliConfig &cfg) {
    tuner::GridSpec grid;
    if (cfg.n_max != 0) {
        grid.n_max = std::max(cfg.n_max, grid.n_min);
    }
    return grid;
}

tuner::TimingOptions timing_for(const CliConfig &cfg) {
    tuner::TimingOptions timing;
    timing.trials = std::max<std::size_t>(cfg.trials, 1);
    if (cfg.seed_given) {
        timing.seed = cfg.seed;
    }
    return timing;
}

}  // namespace

int cmd_compute(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (!cfg.input_path.empty() && !cfg.inline_matrix.empty()) {
            throw UsageError("give either --input or an inline matrix, not both");
        }
        const std::string text =
            cfg.input_path.empty() ? cfg.inline_matrix : read_text(cfg.input_path);
        const AnyMatrix a = parse_matrix(text);
        TuningParams params;
        if (!cfg.algorithm.algorithm) {
            params = cfg.tuning_file.empty() ? default_params() : load_tuning_file(cfg.tuning_file);
        }
        const PermanentResult r = evaluate_any(a, cfg.algorithm, params);
        if (r.overflowed || !finite(r)) {
            err << "error: numeric overflow computing the permanent\n";
            return exit_overflow;
        }
        out << format_value(r) << '\n';
        if (cfg.verbose) {
            const std::size_t m = std::min(rows_of(a), cols_of(a));
            const std::size_t n = std::max(rows_of(a), cols_of(a));
            const AlgorithmId used =
                cfg.algorithm.algorithm ? *cfg.algorithm.algorithm : select_algorithm(m, n, params);
            out << "algorithm: " << to_string(used) << '\n';
        }
        return exit_ok;
    });
}

int cmd_tune(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        tuner::TuneOptions options;
        options.grid = grid_for(cfg);
        options.timing = timing_for(cfg);
        const tuner::TuneReport report = tuner::run_tuning(options);
        for (const std::string &w : report.warnings) {
            err << "warning: " << w << '\n';
        }
        const std::string path = cfg.output.empty() ? "permanent_tuning.txt" : cfg.output;
        emit_tuning_file(report.params, path);
        out << format_tuning(report.params);
        if (report.intersection) {
            out << "intersection: n=" << report.intersection->n << " r=" << report.intersection->r
                << '\n';
        } else {
            out << "intersection: none\n";
        }
        out << "wrote " << path << '\n';
        return exit_ok;
    });
}

int cmd_bench(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        auto samples = tuner::run_benchmarks(grid_for(cfg), timing_for(cfg));
        std::erase_if(samples, [](const tuner::BenchmarkSample &s) { return !s.feasible(); });
        std::sort(samples.begin(), samples.end(), [](const auto &a, const auto &b) {
            const std::string_view x = to_string(a.algorithm);
            const std::string_view y = to_string(b.algorithm);
            return std::tie(x, a.n, a.m) < std::tie(y, b.n, b.m);
        });
        write_output(cfg, out, [&](std::ostream &os) {
            os << "algorithm,m,n,ratio,median_seconds,trials\n";
            for (const auto &s : samples) {
                os << to_string(s.algorithm) << ',' << s.m << ',' << s.n << ',' << s.ratio << ','
                   << s.median_seconds << ',' << s.trials << '\n';
            }
        });
        return exit_ok;
    });
}

int cmd_precision(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        oracles::PrecisionOptions options;
        if (cfg.seed_given) {
            options.seed = cfg.seed;
        }
        if (cfg.n_max != 0) {
            options.n_max = cfg.n_max;
        }
        options.cauchy_attempts = cfg.cauchy_attempts;
        const auto records = oracles::run_precision_suite(options);
        write_output(cfg, out, [&](std::ostream &os) { oracles::write_precision_csv(os, records); });
        return exit_ok;
    });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact permanents of rectangular matrices"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string algorithm = "opt";
    std::vector<std::string> inline_tokens;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--output,-o", cfg.output, "Output path");
        sub->add_option("--seed", cfg.seed, "Random seed")->each([&](const std::string &) {
            cfg.seed_given = true;
        });
        sub->add_flag("--verbose,-v", cfg.verbose, "Extra diagnostics");
    };

    CLI::App *compute = app.add_subcommand("compute", "Print the permanent of a matrix");
    compute->add_option("--input,-i", cfg.input_path, "Read the matrix from a file");
    compute->add_option("--algorithm,-a", algorithm,
                        "combinatoric|ryser|glynn|opt, optionally suffixed _square or _rectangular");
    compute->add_option("--tuning-file", cfg.tuning_file, "Dispatch parameters for opt");
    compute->add_option("matrix", inline_tokens, "Inline matrix, rows separated by ';'");
    add_common(compute);

    CLI::App *tune = app.add_subcommand("tune", "Benchmark this machine and write a tuning file");
    CLI::App *bench = app.add_subcommand("bench", "Time every algorithm over the tuning grid");
    for (CLI::App *sub : {tune, bench}) {
        sub->add_option("--trials", cfg.trials, "Timed trials per cell")->check(CLI::PositiveNumber);
        sub->add_option("--n-max", cfg.n_max, "Largest column count in the grid");
        add_common(sub);
    }
    CLI::App *precision = app.add_subcommand("precision", "Digits lost against analytic oracles");
    precision->add_option("--n-max", cfg.n_max, "Largest column count");
    precision->add_option("--cauchy-attempts", cfg.cauchy_attempts,
                          "Random Cauchy draws per order; the best conditioned is kept")
        ->check(CLI::PositiveNumber);
    add_common(precision);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    const auto choice = parse_algorithm_choice(algorithm);
    if (!choice) {
        err << "error: unknown algorithm '" << algorithm << "'\n";
        return exit_input_error;
    }
    cfg.algorithm = *choice;
    for (const std::string &t : inline_tokens) {
        cfg.inline_matrix += (cfg.inline_matrix.empty() ? "" : " ") + t;
    }

    if (compute->parsed()) {
        cfg.subcommand = Subcommand::Compute;
        return cmd_compute(cfg, out, err);
    }
    if (tune->parsed()) {
        cfg.subcommand = Subcommand::Tune;
        return cmd_tune(cfg, out, err);
    }
    if (bench->parsed()) {
        cfg.subcommand = Subcommand::Bench;
        return cmd_bench(cfg, out, err);
    }
    cfg.subcommand = Subcommand::Precision;
    return cmd_precision(cfg, out, err);
}

}  // namespace permanent::cli
