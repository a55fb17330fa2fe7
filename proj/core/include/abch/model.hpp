#pragma once

#include "abch/gaussian_rational.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace abch {

/// Structure equations of a complex manifold model on an invariant coframe phi^1..phi^n:
///   d phi^k = sum_{i<j} d20[k](i,j) phi^i ^ phi^j + sum_{i,j} d11[k](i,j) phi^i ^ phibar^j.
/// Indices are 1-based as in model files. Conjugate equations are implied.
struct ComplexModel {
  using Terms = std::map<std::pair<int, int>, GaussianRational>;

  int n = 0;
  std::string name;
  std::vector<Terms> d20;  ///< d20[k-1]: (i, j) with i < j
  std::vector<Terms> d11;  ///< d11[k-1]: (i, jbar)

  bool is_flat() const;
  bool operator==(const ComplexModel& other) const = default;
};

/// Parses the `.cplx` grammar. Statements may be separated by newlines or `;`.
/// Throws abch::Error with kind UnknownGenerator, BidegreeViolation, SyntaxError or
/// DuplicateEquation, carrying the line and column of the offending token.
ComplexModel parse_model(std::string_view text);
ComplexModel load_model(const std::string& path);

/// One coefficient in the model grammar: `a`, `a/b`, `i`, `a/b i`, `(a/b + c/d i)`.
/// Errors are reported at `line` with columns offset by `column_offset`.
GaussianRational parse_coefficient(std::string_view text, int line = 0, int column_offset = 0);

/// Canonical text form; parse_model(render_model(m)) == m.
std::string render_model(const ComplexModel& model);

}  // namespace abch
