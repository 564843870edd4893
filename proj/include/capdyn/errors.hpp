/*
 * Copyright 2026 The capdyn authors
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

#ifndef CAPDYN_ERRORS_HPP
#define CAPDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace capdyn {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An instant lies outside the domain of a curve, or a span is malformed.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Utility factors composed across mismatched junction instants.
class CompositionError : public Error {
 public:
  explicit CompositionError(const std::string& what) : Error(what) {}
};

/// A discrete rate at the singular point of the lower/upper duality
/// (lower == -1 or upper == 1), where the dual rate does not exist.
class SingularRateError : public Error {
 public:
  explicit SingularRateError(const std::string& what) : Error(what) {}
};

/// A step factor (I + lower) or (I - upper) is singular or so badly
/// conditioned that applying or inverting it would amplify noise.
class SingularStepError : public Error {
 public:
  explicit SingularStepError(const std::string& what) : Error(what) {}
};

/// A utility matrix is singular, so the upper matrix rate is undefined.
class SingularUtilityError : public Error {
 public:
  explicit SingularUtilityError(const std::string& what) : Error(what) {}
};

/// A generator is defective (or numerically too close to defective) and
/// has no usable eigenbasis; callers should fall back to ordered_exp.
class NonDiagonalizableError : public Error {
 public:
  explicit NonDiagonalizableError(const std::string& what) : Error(what) {}
};

/// Peak intensity requested for a flow containing impulses, which have
/// no finite peak.
class UndefinedPeakError : public Error {
 public:
  explicit UndefinedPeakError(const std::string& what) : Error(what) {}
};

/// A paired transfer from an account to itself.
class SelfTransferError : public Error {
 public:
  explicit SelfTransferError(const std::string& what) : Error(what) {}
};

/// A quantity has the wrong sign (e.g. a nonnegative loan amount).
class SignError : public Error {
 public:
  explicit SignError(const std::string& what) : Error(what) {}
};

/// A collection is empty where at least one element is required.
class ArityError : public Error {
 public:
  explicit ArityError(const std::string& what) : Error(what) {}
};

/// A value or container violates a structural invariant (non-finite
/// entries, unordered breakpoints, size mismatches, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Malformed input text. Carries a 1-based line/column when known
/// (0 means "not applicable", e.g. schema-level violations).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace capdyn

#endif  // CAPDYN_ERRORS_HPP
