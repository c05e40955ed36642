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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "permanent/cli.hpp"
#include "permanent/dispatch.hpp"
#include "permanent/errors.hpp"

using namespace permanent;
using namespace permanent::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "permanent");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("matrix text parsing") {
    const AnyMatrix a = parse_matrix("1 2 3; 4 5 6");
    CHECK(kind_of(a) == ElementKind::Int64);
    CHECK(rows_of(a) == 2);
    CHECK(cols_of(a) == 3);
    CHECK(kind_of(parse_matrix("1 2\n3 4.5\n")) == ElementKind::Float64);
    CHECK(kind_of(parse_matrix("1 2e1; 3 4")) == ElementKind::Float64);
    const AnyMatrix c = parse_matrix("1+2i 3; -1.5-0.5i 2i");
    REQUIRE(kind_of(c) == ElementKind::ComplexFloat64);
    const auto &cm = std::get<Matrix<Complex>>(c);
    CHECK(cm(0, 0) == Complex(1, 2));
    CHECK(cm(0, 1) == Complex(3, 0));
    CHECK(cm(1, 0) == Complex(-1.5, -0.5));
    CHECK(cm(1, 1) == Complex(0, 2));
    CHECK(std::get<Matrix<Complex>>(parse_matrix("1e-1+2e+1i")) (0, 0) == Complex(0.1, 20));
    CHECK_THROWS_AS(parse_matrix("1 2; 3"), FormatError);
    CHECK_THROWS_AS(parse_matrix("1 x"), FormatError);
    CHECK_THROWS_AS(parse_matrix(" ; \n"), FormatError);
    CHECK_THROWS_AS(parse_matrix("99999999999999999999"), FormatError);
}

TEST_CASE("algorithm choices") {
    CHECK_FALSE(parse_algorithm_choice("opt")->algorithm.has_value());
    const auto g = parse_algorithm_choice("glynn_rectangular");
    REQUIRE(g);
    CHECK(g->algorithm == AlgorithmId::Glynn);
    CHECK(g->form == Form::Rectangular);
    CHECK(parse_algorithm_choice("opt_square")->form == Form::Square);
    CHECK_FALSE(parse_algorithm_choice("fast").has_value());
    CHECK_FALSE(parse_algorithm_choice("_square").has_value());
}

TEST_CASE("compute prints the permanent") {
    Run r = run_cli({"compute", "1 2 3; 4 5 6; 7 8 9"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "450\n");
    r = run_cli({"compute", "--algorithm", "ryser", "1 1; 1 1"});
    CHECK(r.out == "2\n");
    r = run_cli({"compute", "-v", "1", "2", ";", "3", "4"});
    CHECK(r.out.starts_with("10\nalgorithm: "));
    r = run_cli({"compute", "--algorithm", "glynn", "0.5 1; 1 1"});
    CHECK(r.out == "1.5e+00\n");
    r = run_cli({"compute", "-a", "ryser_square", "1 2 3; 4 5 6"});
    CHECK(r.code == exit_input_error);
}

TEST_CASE("compute exit codes") {
    CHECK(run_cli({"compute", "1 2; 3"}).code == exit_input_error);
    CHECK(run_cli({"compute", "--algorithm", "fastest", "1"}).code == exit_input_error);
    CHECK(run_cli({"compute", "--input", "/nonexistent/matrix.txt"}).code == exit_io_error);
    CHECK(run_cli({"compute", "3000000000 3000000000; 3000000000 3000000000"}).code ==
          exit_overflow);
    CHECK(run_cli({"compute", "1e300 1e300; 1e300 1e300"}).code == exit_overflow);
    CHECK(run_cli({}).code == exit_input_error);
}

TEST_CASE("compute reads a matrix file") {
    const auto path = temp_path("permanent_cli_matrix.txt");
    std::ofstream(path) << "1 2\n3 4\n";
    const Run r = run_cli({"compute", "--input", path.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "10\n");
    std::filesystem::remove(path);
}

TEST_CASE("tuning files drive opt without changing values") {
    const auto path = temp_path("permanent_cli_tuning.txt");
    TuningParams p = default_params();
    p.p2 = 1;  // always combinatoric in the small regime
    p.p1 = 0;
    p.p3 = 0;
    emit_tuning_file(p, path);
    const Run tuned = run_cli({"compute", "-v", "--tuning-file", path.string(), "1 2 3; 4 5 6"});
    CHECK(tuned.code == exit_ok);
    CHECK(tuned.out == "58\nalgorithm: combinatoric\n");
    CHECK(run_cli({"compute", "1 2 3; 4 5 6"}).out == "58\n");
    std::ofstream(path) << "format_version=1\n";
    CHECK(run_cli({"compute", "--tuning-file", path.string(), "1"}).code == exit_input_error);
    // An explicit algorithm bypasses the tuning file.
    CHECK(run_cli({"compute", "-a", "glynn", "--tuning-file", path.string(), "2"}).out == "2\n");
    std::filesystem::remove(path);
}

TEST_CASE("tune writes a loadable file") {
    const auto path = temp_path("permanent_cli_tune.txt");
    const Run r = run_cli({"tune", "--n-max", "5", "--trials", "1", "--output", path.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("p8=") != std::string::npos);
    CHECK(r.out.find("intersection:") != std::string::npos);
    const TuningParams p = load_tuning_file(path);
    CHECK(p.source == ParamSource::MachineTuned);
    const Run c = run_cli({"compute", "--tuning-file", path.string(), "1 2 3; 4 5 6; 7 8 9"});
    CHECK(c.out == "450\n");
    std::filesystem::remove(path);
    CHECK(run_cli({"tune", "--n-max", "4", "--trials", "1", "--output", "/nonexistent/t.txt"})
              .code == exit_io_error);
}

TEST_CASE("bench emits sorted feasible rows") {
    const Run r = run_cli({"bench", "--n-max", "5", "--trials", "1"});
    REQUIRE(r.code == exit_ok);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "algorithm,m,n,ratio,median_seconds,trials");
    std::vector<std::tuple<std::string, int, int>> keys;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string alg, m, n, ratio, secs, trials;
        std::getline(row, alg, ',');
        std::getline(row, m, ',');
        std::getline(row, n, ',');
        std::getline(row, ratio, ',');
        std::getline(row, secs, ',');
        std::getline(row, trials, ',');
        CHECK(std::stod(secs) > 0);
        CHECK(trials == "1");
        keys.emplace_back(alg, std::stoi(n), std::stoi(m));
    }
    CHECK(keys.size() == 3 * 14);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("precision output is deterministic") {
    const Run a = run_cli({"precision", "--n-max", "4", "--cauchy-attempts", "10"});
    const Run b = run_cli({"precision", "--n-max", "4", "--cauchy-attempts", "10"});
    CHECK(a.code == exit_ok);
    CHECK(a.out == b.out);
    CHECK(a.out.starts_with("family,algorithm,m,n,kind,digits_lost,overflow\n"));
    const auto path = temp_path("permanent_cli_precision.csv");
    CHECK(run_cli({"precision", "--n-max", "4", "--cauchy-attempts", "10", "--output",
                   path.string()})
              .code == exit_ok);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == a.out);
    std::filesystem::remove(path);
}
