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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "permanent/errors.hpp"

namespace permanent {

using Complex = std::complex<double>;

enum class ElementKind { Int64, Float64, ComplexFloat64 };

const char *to_string(ElementKind kind);

template <typename T>
inline constexpr bool is_element_v =
    std::is_same_v<T, std::int64_t> || std::is_same_v<T, double> || std::is_same_v<T, Complex>;

template <typename T>
constexpr ElementKind kind_of() {
    static_assert(is_element_v<T>, "unsupported element type");
    if constexpr (std::is_same_v<T, std::int64_t>) {
        return ElementKind::Int64;
    } else if constexpr (std::is_same_v<T, double>) {
        return ElementKind::Float64;
    } else {
        return ElementKind::ComplexFloat64;
    }
}

/**
 * @brief Dense row-major m-by-n matrix with m, n >= 1.
 *
 * Element (i, j) lives at index i * cols() + j.
 */
template <typename T>
class Matrix {
    static_assert(is_element_v<T>, "Matrix element must be int64, double or complex<double>");

  public:
    using value_type = T;

    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (rows_ == 0 || cols_ == 0) {
            throw ShapeError("matrix must have at least one row and one column");
        }
        if (data_.size() != rows_ * cols_) {
            throw ShapeError("expected " + std::to_string(rows_ * cols_) + " elements for a " +
                             std::to_string(rows_) + "x" + std::to_string(cols_) +
                             " matrix, got " + std::to_string(data_.size()));
        }
    }

    /// Zero-filled m-by-n matrix.
    Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, std::vector<T>(rows * cols)) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const T &operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    T &operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const T> data() const noexcept { return data_; }

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> data_;
};

template <typename T>
Matrix<T> transpose(const Matrix<T> &a) {
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

/// Element-wise conversion, e.g. an integer matrix to double for floating kernels.
template <typename To, typename From>
Matrix<To> convert(const Matrix<From> &a) {
    std::vector<To> data;
    data.reserve(a.data().size());
    for (const From &x : a.data()) {
        data.push_back(static_cast<To>(x));
    }
    return Matrix<To>(a.rows(), a.cols(), std::move(data));
}

/// One element of a matrix whose kind is only known at run time.
using Element = std::variant<std::int64_t, double, Complex>;

/// A matrix whose element kind is only known at run time.
using AnyMatrix = std::variant<Matrix<std::int64_t>, Matrix<double>, Matrix<Complex>>;

ElementKind kind_of(const Element &e);
ElementKind kind_of(const AnyMatrix &a);
std::size_t rows_of(const AnyMatrix &a);
std::size_t cols_of(const AnyMatrix &a);

/**
 * @brief Builds a row-major matrix from a homogeneous element sequence.
 *
 * Throws ShapeError if elements.size() != m * n and TypeError if the
 * elements do not all share one ElementKind.
 */
AnyMatrix make_matrix(std::size_t m, std::size_t n, std::span<const Element> elements);

AnyMatrix transpose(const AnyMatrix &a);

}  // namespace permanent
