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

// Benchmarks this machine and writes the compiled-in defaults include.

#include <charconv>
#include <fstream>
#include <iostream>

#include "permanent/tuner.hpp"

namespace {

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

}  // namespace

int main(int argc, char **argv) {
    if (argc != 2) {
        std::cerr << "usage: permanent-tune-defaults OUTPUT\n";
        return 2;
    }
    try {
        permanent::tuner::TuneOptions options;
        options.fixed_regime_boundary = 13;
        const auto report = permanent::tuner::run_tuning(options);
        for (const auto &w : report.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        const auto &p = report.params;
        std::ofstream out(argv[1]);
        out << "// Compiled-in dispatch parameters. Regenerated by a PERMANENT_TUNE=ON build.\n";
        const std::pair<const char *, double> values[] = {{"p1", p.p1}, {"p2", p.p2}, {"p3", p.p3},
                                                          {"p4", p.p4}, {"p5", p.p5}, {"p6", p.p6},
                                                          {"p7", p.p7}, {"p8", p.p8}};
        for (const auto &[key, value] : values) {
            out << "params." << key << " = " << shortest(value) << ";\n";
        }
        out << "params.host = " << quoted(p.host) << ";\n";
        out << "params.created_at = " << quoted(p.created_at) << ";\n";
        if (!out) {
            std::cerr << "error: cannot write " << argv[1] << '\n';
            return 4;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
