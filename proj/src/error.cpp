#include "gftdual/error.hpp"

namespace gftdual {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::OffsetOutOfRange: return "OffsetOutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NumericalBreakdown: return "NumericalBreakdown";
    case Errc::NonOrthogonalInput: return "NonOrthogonalInput";
    case Errc::RepeatedEigenvalues: return "RepeatedEigenvalues";
    case Errc::NotCirculant: return "NotCirculant";
    case Errc::IterationCap: return "IterationCap";
    case Errc::ResampleCapExceeded: return "ResampleCapExceeded";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gftdual
