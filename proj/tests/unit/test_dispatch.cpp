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

#include "permanent/dispatch.hpp"
#include "permanent/errors.hpp"

using namespace permanent;

namespace {

TuningParams handmade() {
    TuningParams p;
    p.p1 = 0;  // combinatoric below n = 6.5
    p.p2 = -1;
    p.p3 = 6.5;
    p.p4 = 8;
    p.p5 = 10;  // glynn above r = 0.2
    p.p6 = 0;
    p.p7 = -2;
    p.p8 = 13;
    return p;
}

std::string replace_line(std::string text, const std::string &key, const std::string &line) {
    const std::size_t at = text.find(key + "=");
    const std::size_t eol = text.find('\n', at);
    return text.replace(at, eol - at + 1, line);
}

}  // namespace

TEST_CASE("selection follows the two-regime structure") {
    const TuningParams p = handmade();
    CHECK(select_algorithm(3, 3, p) == AlgorithmId::Combinatoric);
    CHECK(select_algorithm(8, 8, p) == AlgorithmId::Combinatoric);  // small square cutoff
    CHECK(select_algorithm(9, 9, p) == AlgorithmId::Glynn);
    CHECK(select_algorithm(2, 6, p) == AlgorithmId::Combinatoric);
    CHECK(select_algorithm(2, 7, p) == AlgorithmId::Glynn);
    CHECK(select_algorithm(13, 13, p) == AlgorithmId::Glynn);
    CHECK(select_algorithm(20, 20, p) == AlgorithmId::Glynn);
    CHECK(select_algorithm(2, 20, p) == AlgorithmId::Ryser);
}

TEST_CASE("points exactly on a plane fall on the non-positive side") {
    TuningParams p = handmade();
    p.p3 = 6;  // -n + 6 = 0 at n = 6
    CHECK(select_algorithm(2, 6, p) == AlgorithmId::Glynn);
    CHECK(select_algorithm(4, 20, p) == AlgorithmId::Ryser);  // 10 * 0.2 - 2 = 0
}

TEST_CASE("opt returns the permanent whichever algorithm it picks") {
    const Matrix<std::int64_t> a(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(opt<std::int64_t, std::int64_t>(a).value == 450);
    CHECK(opt<std::int64_t, std::int64_t>(a, handmade()).value == 450);
    const Matrix<double> wide(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(opt<double>(transpose(wide), handmade()).value == 58.0);
    CHECK_THROWS_AS(opt_square<double>(wide, handmade()), ShapeError);
    CHECK(opt_rectangular<double>(wide, handmade()).value == 58.0);
    CHECK(std::get<std::int64_t>(opt(AnyMatrix(a), handmade(), true).value) == 450);
}

TEST_CASE("validation") {
    CHECK_NOTHROW(validate(handmade()));
    TuningParams p = handmade();
    p.p4 = 14;
    CHECK_THROWS_AS(validate(p), UsageError);
    p = handmade();
    p.p8 = 1;
    p.p4 = 1;
    CHECK_THROWS_AS(validate(p), UsageError);
    p = handmade();
    p.p6 = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate(p), UsageError);
    p = handmade();
    p.p5 = 0;
    CHECK_THROWS_AS(validate(p), UsageError);
}

TEST_CASE("default parameters are valid and keep the regime boundary at 13") {
    const TuningParams p = default_params();
    CHECK_NOTHROW(validate(p));
    CHECK(p.p8 == 13);
    CHECK(p.source == ParamSource::Default);
}

TEST_CASE("tuning text round-trips exactly") {
    TuningParams p = handmade();
    p.p1 = 0.1 + 0.2;
    p.p6 = -1.0 / 3.0;
    p.source = ParamSource::MachineTuned;
    p.host = "box linux-x86_64";
    p.created_at = "2026-01-01T00:00:00Z";
    const std::string text = format_tuning(p);
    CHECK(text.starts_with("format_version=1\n"));
    CHECK(parse_tuning(text) == p);
    CHECK(parse_tuning("# comment\n\n" + text) == p);
}

TEST_CASE("malformed tuning text is rejected") {
    const std::string text = format_tuning(handmade());
    CHECK_THROWS_AS(parse_tuning(replace_line(text, "p6", "")), FormatError);
    CHECK_THROWS_AS(parse_tuning(text + "p9=1\n"), FormatError);
    CHECK_THROWS_AS(parse_tuning(text + "p1=1\n"), FormatError);
    CHECK_THROWS_AS(parse_tuning(replace_line(text, "p2", "p2=abc\n")), FormatError);
    CHECK_THROWS_AS(parse_tuning(replace_line(text, "format_version", "format_version=2\n")),
                    FormatError);
    CHECK_THROWS_AS(parse_tuning(replace_line(text, "source", "source=guess\n")), FormatError);
    CHECK_THROWS_AS(parse_tuning(replace_line(text, "p4", "p4=20\n")), FormatError);
    CHECK_THROWS_AS(parse_tuning("just words\n"), FormatError);
}

TEST_CASE("tuning files round-trip through disk") {
    const auto path = std::filesystem::temp_directory_path() / "permanent_dispatch_test.txt";
    emit_tuning_file(handmade(), path);
    CHECK(load_tuning_file(path) == handmade());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_tuning_file(path), IoError);
    CHECK_THROWS_AS(emit_tuning_file(handmade(), "/nonexistent-dir/tuning.txt"), IoError);
}
