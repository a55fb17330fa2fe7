#pragma once

#include "abch/matrix.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace abch {

/// lambda counts as zero iff lambda < abs + rel * lambda_max.
struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-9;

  /// Defaults, with rel overridden by ABCH_TOL_REL when set (InputError if unparsable).
  static Tolerance from_env();
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending, clamped at 0 below the threshold
  std::size_t zero_count = 0;
  double max = 0.0;
  std::optional<double> gap;  // smallest nonzero eigenvalue; empty when the spectrum is {0}

  bool all_zero() const { return !gap.has_value(); }
};

/// Eigenvalues of a Gram-self-adjoint operator: with G = L L^H, those of L^H A L^{-H}.
/// Throws EigSolverFailure when G is not positive definite or the solver does not converge.
Spectrum spectrum(const NumericMatrix& A, const NumericMatrix& gram, Tolerance tol = {});

/// Basis (as columns) of the eigenvectors counted as zero by `spectrum`.
NumericMatrix numeric_kernel(const NumericMatrix& A, const NumericMatrix& gram, Tolerance tol = {});

/// Deterministic sampling source used by every property check. The double conversion is done
/// by hand because std::uniform_real_distribution differs between standard libraries.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed);
  /// Uniform in [-1, 1).
  double uniform();
  Complex complex();
  std::vector<Complex> vector(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 2748;  // 0xABC

struct RayleighReport {
  std::size_t samples = 0;
  double min_quotient = 0.0;
  double gap = 0.0;
  bool vacuous = true;  // spectrum is {0} or the complement of the kernel is trivial
  bool passed = true;
};

/// <x, A x> >= (gap - slack) <x, x> for random x, G-orthogonally projected off the kernel.
/// slack = rel * max(1, lambda_max). `kernel` holds a basis of ker A as columns.
RayleighReport verify_gap_inequality(const NumericMatrix& A, const NumericMatrix& gram, const NumericMatrix& kernel,
                                     const Spectrum& spec, std::size_t samples, std::uint64_t seed,
                                     Tolerance tol = {});

/// G-orthogonal projection of x onto the complement of span(kernel).
std::vector<Complex> project_off(const NumericMatrix& kernel, const NumericMatrix& gram, const std::vector<Complex>& x);

/// Re <x, y> with <x, y> = y^H G x.
double real_inner(const NumericMatrix& gram, const std::vector<Complex>& x, const std::vector<Complex>& y);

}  // namespace abch
