#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gftdual {

enum class Errc {
  IndexOutOfRange,
  DuplicateEdge,
  NonPositiveWeight,
  SelfLoop,
  SizeMismatch,
  OffsetOutOfRange,
  ParseError,
  ConvergenceFailure,
  NotSquare,
  NonFiniteEntry,
  TooLarge,
  NumericalBreakdown,
  NonOrthogonalInput,
  RepeatedEigenvalues,
  NotCirculant,
  IterationCap,
  ResampleCapExceeded,
  EmptyInput,
  InvalidArgument,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RepeatedEigenvaluesError : public Error {
 public:
  RepeatedEigenvaluesError(double min_gap, const std::string& what)
      : Error(Errc::RepeatedEigenvalues, what), min_gap_(min_gap) {}

  double min_gap() const noexcept { return min_gap_; }

 private:
  double min_gap_;
};

}  // namespace gftdual
