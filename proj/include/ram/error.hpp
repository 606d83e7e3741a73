#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ram {

enum class ErrorKind {
  IndexOutOfRange,
  InvalidCayleyTable,
  OrderTooLarge,
  NotASubgroup,
  NotNormal,
  NotAPGroup,
  NotNilpotent,
  NotExponentP,
  NoLiftExists,
  PreconditionViolated,
  InadmissibleSize,
  HypothesisViolated,
  InternalContradiction,
  NotCoprime,
  PaddingImpossible,
  DegenerateRank,
  ParseError,
  InvalidOrder,
  InvalidPrime,
  OutOfRange,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every recoverable failure in the library is reported through this type; the
// kind is what callers and the CLI dispatch on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures additionally carry the byte offset into the input text.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t position)
      : Error(kind, message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ram
