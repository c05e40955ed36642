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

#include "permanent/dispatch.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace permanent {

const char *to_string(ParamSource source) {
    return source == ParamSource::Default ? "default" : "machine-tuned";
}

void validate(const TuningParams &p) {
    const std::array<double, 8> values = {p.p1, p.p2, p.p3, p.p4, p.p5, p.p6, p.p7, p.p8};
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw UsageError("p" + std::to_string(i + 1) + " is not finite");
        }
    }
    if (p.p8 < 2) {
        throw UsageError("p8 must be at least 2");
    }
    if (p.p4 > p.p8) {
        throw UsageError("p4 must not exceed p8");
    }
    if (p.p1 == 0 && p.p2 == 0) {
        throw UsageError("first hyperplane has a zero normal (p1 = p2 = 0)");
    }
    if (p.p5 == 0 && p.p6 == 0) {
        throw UsageError("second hyperplane has a zero normal (p5 = p6 = 0)");
    }
}

AlgorithmId select_algorithm(std::size_t m, std::size_t n, const TuningParams &p) {
    const double r = static_cast<double>(m) / static_cast<double>(n);
    const double order = static_cast<double>(n);
    if (order <= p.p8) {
        if (m == n && order <= p.p4) {
            return AlgorithmId::Combinatoric;
        }
        return p.p1 * r + p.p2 * order + p.p3 > 0 ? AlgorithmId::Combinatoric : AlgorithmId::Glynn;
    }
    return p.p5 * r + p.p6 * order + p.p7 > 0 ? AlgorithmId::Glynn : AlgorithmId::Ryser;
}

namespace {

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> dispatch(const Matrix<Type> &a, const TuningParams &params,
                                         int form) {
    const std::size_t m = std::min(a.rows(), a.cols());
    const std::size_t n = std::max(a.rows(), a.cols());
    switch (select_algorithm(m, n, params)) {
    case AlgorithmId::Combinatoric:
        return form == 1   ? combinatoric_square<Type, IntType>(a)
               : form == 2 ? combinatoric_rectangular<Type, IntType>(a)
                           : combinatoric<Type, IntType>(a);
    case AlgorithmId::Ryser:
        return form == 1   ? ryser_square<Type, IntType>(a)
               : form == 2 ? ryser_rectangular<Type, IntType>(a)
                           : ryser<Type, IntType>(a);
    case AlgorithmId::Glynn:
        break;
    }
    return form == 1   ? glynn_square<Type, IntType>(a)
           : form == 2 ? glynn_rectangular<Type, IntType>(a)
                       : glynn<Type, IntType>(a);
}

}  // namespace

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> opt(const Matrix<Type> &a, const TuningParams &params) {
    return dispatch<Type, IntType>(a, params, 0);
}

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> opt_square(const Matrix<Type> &a, const TuningParams &params) {
    return dispatch<Type, IntType>(a, params, 1);
}

template <typename Type, typename IntType>
Result<result_t<Type, IntType>> opt_rectangular(const Matrix<Type> &a,
                                                const TuningParams &params) {
    return dispatch<Type, IntType>(a, params, 2);
}

#define PERMANENT_INSTANTIATE(Type, IntType)                                                     \
    template Result<result_t<Type, IntType>> opt<Type, IntType>(const Matrix<Type> &,             \
                                                                const TuningParams &);           \
    template Result<result_t<Type, IntType>> opt_square<Type, IntType>(const Matrix<Type> &,      \
                                                                       const TuningParams &);    \
    template Result<result_t<Type, IntType>> opt_rectangular<Type, IntType>(                     \
        const Matrix<Type> &, const TuningParams &);

PERMANENT_INSTANTIATE(std::int64_t, void)
PERMANENT_INSTANTIATE(std::int64_t, std::int64_t)
PERMANENT_INSTANTIATE(double, void)
PERMANENT_INSTANTIATE(Complex, void)

#undef PERMANENT_INSTANTIATE

PermanentResult opt(const AnyMatrix &a, const TuningParams &params, bool integer_result) {
    const std::size_t m = std::min(rows_of(a), cols_of(a));
    const std::size_t n = std::max(rows_of(a), cols_of(a));
    return compute(a, select_algorithm(m, n, params), integer_result);
}

// Tuning file ----------------------------------------------------------------

namespace {

constexpr std::array<const char *, 8> param_keys = {"p1", "p2", "p3", "p4",
                                                    "p5", "p6", "p7", "p8"};

std::array<double *, 8> param_slots(TuningParams &p) {
    return {&p.p1, &p.p2, &p.p3, &p.p4, &p.p5, &p.p6, &p.p7, &p.p8};
}

std::string shortest_decimal(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view key, std::string_view text) {
    double value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw FormatError("tuning file: " + std::string(key) + " is not a number: '" +
                          std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::string format_tuning(const TuningParams &params) {
    for (const std::string *text : {&params.host, &params.created_at}) {
        if (text->find_first_of("\r\n") != std::string::npos) {
            throw UsageError("tuning metadata must be a single line");
        }
    }
    TuningParams copy = params;
    std::ostringstream out;
    out << "format_version=" << tuning_format_version << '\n';
    out << "source=" << to_string(params.source) << '\n';
    out << "host=" << params.host << '\n';
    out << "created_at=" << params.created_at << '\n';
    const auto slots = param_slots(copy);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        out << param_keys[i] << '=' << shortest_decimal(*slots[i]) << '\n';
    }
    return out.str();
}

TuningParams parse_tuning(std::string_view text) {
    std::map<std::string, std::string, std::less<>> fields;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError("tuning file line " + std::to_string(line_no) + ": expected key=value");
        }
        std::string key(line.substr(0, eq));
        if (!fields.emplace(key, std::string(line.substr(eq + 1))).second) {
            throw FormatError("tuning file: duplicate key '" + key + "'");
        }
    }

    static const std::array<const char *, 4> meta_keys = {"format_version", "source", "host",
                                                          "created_at"};
    for (const auto &[key, value] : fields) {
        const bool known =
            std::find_if(meta_keys.begin(), meta_keys.end(), [&](const char *k) { return key == k; }) !=
                meta_keys.end() ||
            std::find_if(param_keys.begin(), param_keys.end(), [&](const char *k) { return key == k; }) !=
                param_keys.end();
        if (!known) {
            throw FormatError("tuning file: unknown key '" + key + "'");
        }
    }
    auto require = [&](const char *key) -> const std::string & {
        const auto it = fields.find(key);
        if (it == fields.end()) {
            throw FormatError(std::string("tuning file: missing field '") + key + "'");
        }
        return it->second;
    };

    if (require("format_version") != std::to_string(tuning_format_version)) {
        throw FormatError("tuning file: unsupported format_version '" + require("format_version") +
                          "'");
    }
    TuningParams params;
    const std::string &source = require("source");
    if (source == "default") {
        params.source = ParamSource::Default;
    } else if (source == "machine-tuned") {
        params.source = ParamSource::MachineTuned;
    } else {
        throw FormatError("tuning file: source must be 'default' or 'machine-tuned', got '" +
                          source + "'");
    }
    params.host = require("host");
    params.created_at = require("created_at");
    const auto slots = param_slots(params);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        *slots[i] = parse_double(param_keys[i], require(param_keys[i]));
    }
    try {
        validate(params);
    } catch (const UsageError &e) {
        throw FormatError(std::string("tuning file: ") + e.what());
    }
    return params;
}

TuningParams load_tuning_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open tuning file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tuning(buffer.str());
}

void emit_tuning_file(const TuningParams &params, const std::filesystem::path &path) {
    validate(params);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write tuning file " + path.string());
    }
    out << format_tuning(params);
    out.flush();
    if (!out) {
        throw IoError("failed writing tuning file " + path.string());
    }
}

}  // namespace permanent
