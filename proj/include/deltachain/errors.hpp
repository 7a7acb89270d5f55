#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace deltachain {

enum class ErrorKind {
  InvalidParameter,
  OverflowRisk,
  OrderTooLarge,
  GridTooCoarse,
  OutOfBand,
  DegenerateCell,
  BoundOutsideGerm,
  ResonancePole,
  NonMonotoneDispersion,
  ParseError,
};

/// Machine-readable name of an error kind, e.g. "OverflowRisk".
std::string_view error_token(ErrorKind kind);

/// The single exception type thrown by the library. The kind carries the
/// typed failure; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view token() const { return error_token(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace deltachain
