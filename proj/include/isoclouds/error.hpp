#pragma once

#include <stdexcept>
#include <string>

namespace isoclouds {

enum class ErrorKind {
  InvalidInput,
  DimensionMismatch,
  NonEmbeddable,
  DegenerateInput,
  AmbiguousInput,
  Incomparable,
  Overflow,
  InputFormat,
  TooLarge,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this type; kind() lets callers
// (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace isoclouds
