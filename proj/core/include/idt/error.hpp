#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `offset` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error("parse error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Bad input data: missing files, malformed records, shape mismatches,
/// atom indices out of range.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A documented capacity limit was exceeded (node count, guard count).
class LimitError : public DataError {
 public:
  using DataError::DataError;
};

/// An internal invariant did not hold. Always a bug or a corrupted model.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace idt
