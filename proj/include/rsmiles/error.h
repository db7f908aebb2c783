//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_ERROR_H_
#define RSMILES_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsmiles {

class Error: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised for characters outside the SMILES token grammar.
class TokenizeError: public Error {
public:
  TokenizeError(const std::string &what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) { }

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

class ParseError: public Error {
public:
  ParseError(const std::string &what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) { }

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Structural violation while building a molecular graph (self loop,
// duplicate bond, out-of-range index, duplicate map number).
class GraphError: public Error {
public:
  using Error::Error;
};

class InvalidRootError: public Error {
public:
  using Error::Error;
};

class AlignError: public Error {
public:
  enum class Kind {
    kUnmappedProduct,
    kRootNotInProduct,
    kMapNotInReactants,
    kRootNotShared,
    kRootNotInLargest,
    kSynthonReactantMismatch,
    kNotSingleProduct,
  };

  AlignError(Kind kind, const std::string &what): Error(what), kind_(kind) { }

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

// Input/output failures (kIo) and malformed dataset rows (kFormat).
class DataError: public Error {
public:
  enum class Kind {
    kIo,
    kFormat,
  };

  DataError(Kind kind, const std::string &what, std::size_t line = 0)
      : Error(what), kind_(kind), line_(line) { }

  Kind kind() const noexcept { return kind_; }
  // 1-based; 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

private:
  Kind kind_;
  std::size_t line_;
};

// Invalid configuration or mismatched inputs (EmptyVocabulary,
// LengthMismatch, factor < 1, ...).
class ConfigError: public Error {
public:
  using Error::Error;
};

}  // namespace rsmiles

#endif  // RSMILES_ERROR_H_
