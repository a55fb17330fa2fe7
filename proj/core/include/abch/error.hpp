#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abch {

enum class ErrorKind {
  // model files
  UnknownGenerator,
  BidegreeViolation,
  SyntaxError,
  DuplicateEquation,
  // complex / metric
  NotAComplex,
  DegreeOverflow,
  NotPositiveDefinite,
  NotHermitian,
  SingularPairing,
  ShapeMismatch,
  // spectra / full complex
  EigSolverFailure,
  InvalidBidegree,
  // coverings
  NotASublattice,
  EmptyModeSet,
  NotGammaInvariant,
  // generic input problems (missing file, bad CLI value)
  InputError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Parse errors carry a 1-based line/column; 0 means "not applicable".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = 0, int column = 0);

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  int line_;
  int column_;
  std::string detail_;
};

}  // namespace abch
