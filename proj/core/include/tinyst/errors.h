// core/include/tinyst/errors.h

// Copyright 2026  The tinyst Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TINYST_ERRORS_H_
#define TINYST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tinyst {

// Root of the project exception hierarchy. The CLI maps subtrees to exit
// codes: UsageError -> 1, DataError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments or configuration supplied by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (manifests, audio, score files).
class DataError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public DataError {
 public:
  explicit SchemaError(const std::string& column)
      : DataError("missing or misnamed column: " + column), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& msg, long line)
      : DataError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class DuplicateIdError : public DataError {
 public:
  explicit DuplicateIdError(const std::string& id)
      : DataError("duplicate utterance id: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class SplitMismatchError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyCorpusError : public DataError {
 public:
  using DataError::DataError;
};

class UnsupportedFormatError : public DataError {
 public:
  UnsupportedFormatError(const std::string& field, const std::string& detail)
      : DataError("unsupported audio format, field '" + field + "': " + detail),
        field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class CorruptFileError : public DataError {
 public:
  using DataError::DataError;
};

class TooShortError : public DataError {
 public:
  TooShortError(const std::string& msg, long minimum)
      : DataError(msg), minimum_(minimum) {}
  long minimum() const { return minimum_; }

 private:
  long minimum_;
};

class PairingError : public DataError {
 public:
  using DataError::DataError;
};

class NoResultError : public DataError {
 public:
  using DataError::DataError;
};

// Argument outside its mathematical domain (factor <= 0, epsilon >= 1, ...).
class DomainError : public UsageError {
 public:
  using UsageError::UsageError;
};

class ConfigError : public UsageError {
 public:
  explicit ConfigError(const std::string& field)
      : UsageError("invalid configuration field: " + field), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class LayoutError : public UsageError {
 public:
  using UsageError::UsageError;
};

class CapacityError : public UsageError {
 public:
  using UsageError::UsageError;
};

// NaN/Inf detected during a numeric pass; carries the layer that produced it.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& layer)
      : Error("non-finite value in " + layer), layer_(layer) {}
  const std::string& layer() const { return layer_; }

 private:
  std::string layer_;
};

}  // namespace tinyst

#endif  // TINYST_ERRORS_H_
