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

#include "permanent/matrix.hpp"

#include <charconv>

#include "permanent/result.hpp"

namespace permanent {

const char *to_string(ElementKind kind) {
    switch (kind) {
    case ElementKind::Int64:
        return "int64";
    case ElementKind::Float64:
        return "float64";
    case ElementKind::ComplexFloat64:
        return "complex128";
    }
    return "?";
}

ElementKind kind_of(const Element &e) {
    return std::visit([](const auto &x) { return kind_of<std::decay_t<decltype(x)>>(); }, e);
}

ElementKind kind_of(const AnyMatrix &a) {
    return std::visit(
        [](const auto &m) { return kind_of<typename std::decay_t<decltype(m)>::value_type>(); },
        a);
}

std::size_t rows_of(const AnyMatrix &a) {
    return std::visit([](const auto &m) { return m.rows(); }, a);
}

std::size_t cols_of(const AnyMatrix &a) {
    return std::visit([](const auto &m) { return m.cols(); }, a);
}

namespace {

template <typename T>
Matrix<T> gather(std::size_t m, std::size_t n, std::span<const Element> elements) {
    std::vector<T> data;
    data.reserve(elements.size());
    for (const Element &e : elements) {
        data.push_back(std::get<T>(e));
    }
    return Matrix<T>(m, n, std::move(data));
}

}  // namespace

AnyMatrix make_matrix(std::size_t m, std::size_t n, std::span<const Element> elements) {
    if (m == 0 || n == 0) {
        throw ShapeError("matrix must have at least one row and one column");
    }
    if (elements.size() != m * n) {
        throw ShapeError("expected " + std::to_string(m * n) + " elements for a " +
                         std::to_string(m) + "x" + std::to_string(n) + " matrix, got " +
                         std::to_string(elements.size()));
    }
    const ElementKind kind = kind_of(elements.front());
    for (std::size_t i = 1; i < elements.size(); ++i) {
        if (kind_of(elements[i]) != kind) {
            throw TypeError(std::string("element ") + std::to_string(i) + " is " +
                            to_string(kind_of(elements[i])) + " but the matrix is " +
                            to_string(kind));
        }
    }
    switch (kind) {
    case ElementKind::Int64:
        return gather<std::int64_t>(m, n, elements);
    case ElementKind::Float64:
        return gather<double>(m, n, elements);
    case ElementKind::ComplexFloat64:
        break;
    }
    return gather<Complex>(m, n, elements);
}

AnyMatrix transpose(const AnyMatrix &a) {
    return std::visit([](const auto &m) -> AnyMatrix { return transpose(m); }, a);
}

ElementKind kind_of(const PermanentResult &r) {
    return std::visit([](const auto &x) { return kind_of<std::decay_t<decltype(x)>>(); }, r.value);
}

namespace {

std::string shortest(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string format_value(const PermanentResult &r) {
    return std::visit(
        [](const auto &x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(x);
            } else if constexpr (std::is_same_v<T, double>) {
                return shortest(x);
            } else {
                std::string im = shortest(x.imag());
                if (im.front() != '-') {
                    im.insert(im.begin(), '+');
                }
                return shortest(x.real()) + im + "i";
            }
        },
        r.value);
}

}  // namespace permanent
