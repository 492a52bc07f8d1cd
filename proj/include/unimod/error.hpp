#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unimod {

/// Machine-readable failure categories. The CLI prints these names verbatim.
enum class ErrorKind {
  InvalidArgument,
  InvalidKey,
  SingularMatrix,
  ComplexFixedPoints,
  DivisionByZeroInOrbit,
  ZeroSequenceEntry,
  ZeroDenominator,
  UnknownSymbol,
  NonIntegralPlaintext,
  NegativePlaintext,
  NoSolution,
  NotGoldenOracle,
  NoMatchInBounds,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace unimod
