// Copyright 2026 The vdqc-cutchoose Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception hierarchy used across the library.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vdqc {

/// Root of every exception thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dimension mismatch or a result that would exceed the dimension cap.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A documented precondition on an argument does not hold.
class ContractViolation : public Error {
  public:
    using Error::Error;
};

/// An operator expected to be positive semidefinite has a clearly negative
/// eigenvalue.
class NotPsdError : public Error {
  public:
    using Error::Error;
};

/// A parameter lies outside the domain where a formula is defined.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Strategy the engine cannot model faithfully.
class UnsupportedStrategy : public Error {
  public:
    using Error::Error;
};

/// Scenario configuration rejected. Carries one message per offending field.
class ConfigError : public Error {
  public:
    explicit ConfigError(std::vector<std::string> field_errors)
        : Error(join(field_errors)), errors_(std::move(field_errors)) {}

    [[nodiscard]] const std::vector<std::string> &field_errors() const noexcept {
        return errors_;
    }

  private:
    static std::string join(const std::vector<std::string> &errs) {
        std::string out = "invalid scenario config:";
        for (const auto &e : errs) {
            out += "\n  ";
            out += e;
        }
        return out;
    }

    std::vector<std::string> errors_;
};

/// Filesystem failure, message includes the path.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace vdqc
