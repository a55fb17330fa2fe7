#include "abch/error.hpp"

namespace abch {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::BidegreeViolation: return "BidegreeViolation";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateEquation: return "DuplicateEquation";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::SingularPairing: return "SingularPairing";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::EigSolverFailure: return "EigSolverFailure";
    case ErrorKind::InvalidBidegree: return "InvalidBidegree";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::EmptyModeSet: return "EmptyModeSet";
    case ErrorKind::NotGammaInvariant: return "NotGammaInvariant";
    case ErrorKind::InputError: return "InputError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message, int line, int column) {
  std::string s(to_string(kind));
  if (line > 0) {
    s += " at " + std::to_string(line);
    if (column > 0) s += ":" + std::to_string(column);
  }
  return s + ": " + message;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, int line, int column)
    : std::runtime_error(compose(kind, message, line, column)),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(message) {}

}  // namespace abch
