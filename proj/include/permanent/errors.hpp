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

#include <stdexcept>
#include <string>

namespace permanent {

/// Matrix dimensions do not match the supplied data or the requested kernel.
class ShapeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Elements of more than one kind were mixed in a single matrix.
class TypeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An API was driven outside its contract (e.g. advancing an exhausted cursor).
class UsageError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// The requested computation exceeds a configured work budget.
class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Overflow, singularity or an argument outside a function's domain.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed tuning file or matrix text.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace permanent
