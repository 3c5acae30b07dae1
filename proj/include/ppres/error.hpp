//
// Copyright 2026 The ppres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppres {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             const std::string& origin = "")
      : Error((origin.empty() ? "" : origin + ":") + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Raised when a finite-semantics evaluator meets an unbounded quantifier.
// An input file that cannot be read.
class InputError : public Error {
 public:
  using Error::Error;
};

class UnboundedQuantifierError : public Error {
 public:
  using Error::Error;
};

class MissingBindingError : public Error {
 public:
  explicit MissingBindingError(const std::string& var)
      : Error("no value bound for free variable '" + var + "'"), var_(var) {}
  const std::string& var() const { return var_; }

 private:
  std::string var_;
};

// A quantified variable occurs nonlinearly or with a coefficient shape the
// current stage cannot handle.
class NotNormalizedError : public Error {
 public:
  using Error::Error;
};

class ExpansionLimitError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace ppres
