#include "fixtures.hpp"

#include "abch/error.hpp"
#include "abch/spectrum.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace abch;

namespace {

NumericMatrix diag(std::initializer_list<double> values) {
  NumericMatrix m(values.size(), values.size());
  std::size_t i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("eigenvalues of a diagonal operator") {
    NumericMatrix A = diag({3.0, 0.0});
    const Spectrum s = spectrum(A, diag({1.0, 1.0}));
    CHECK(s.zero_count == 1);
    CHECK(s.gap.value() == doctest::Approx(3.0));
    CHECK(s.max == doctest::Approx(3.0));
    const Spectrum z = spectrum(diag({0.0, 0.0}), diag({1.0, 1.0}));
    CHECK(z.all_zero());
    CHECK(z.zero_count == 2);
  }

  TEST_CASE("zero count matches the exact kernel") {
    const ExactEngine e = fixtures::engine("iwasawa", 2);
    const ExactMatrix L = e.assemble(LaplacianKind::Delbar, {1, 1});
    const Spectrum s = spectrum(to_numeric(L), to_numeric(e.metric().gram({1, 1})));
    CHECK(s.zero_count == Subspace::kernel(L).dim());
    CHECK(s.eigenvalues.size() == 9);
    for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) CHECK(s.eigenvalues[i - 1] <= s.eigenvalues[i]);
    const NumericMatrix ker = numeric_kernel(to_numeric(L), to_numeric(e.metric().gram({1, 1})));
    CHECK(ker.cols() == s.zero_count);
    CHECK(frobenius_norm(to_numeric(L) * ker) < 1e-10);
  }

  TEST_CASE("threshold") {
    const Spectrum s = spectrum(diag({1e-13, 1.0}), diag({1.0, 1.0}));
    CHECK(s.zero_count == 1);
    CHECK(s.eigenvalues.front() == 0.0);
    const Spectrum loose = spectrum(diag({1e-3, 1.0}), diag({1.0, 1.0}), Tolerance{1e-12, 1e-2});
    CHECK(loose.zero_count == 1);
  }

  TEST_CASE("tolerance from the environment") {
    ::setenv("ABCH_TOL_REL", "1e-6", 1);
    CHECK(Tolerance::from_env().rel == 1e-6);
    ::setenv("ABCH_TOL_REL", "abc", 1);
    CHECK_THROWS_AS(Tolerance::from_env(), Error);
    ::unsetenv("ABCH_TOL_REL");
    CHECK(Tolerance::from_env().rel == 1e-9);
  }

  TEST_CASE("indefinite Gram is rejected") {
    try {
      spectrum(diag({1.0, 2.0}), diag({1.0, -1.0}));
      FAIL("expected EigSolverFailure");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EigSolverFailure);
    }
  }

  TEST_CASE("sample stream is reproducible") {
    SampleStream a(kDefaultSeed), b(kDefaultSeed), c(kDefaultSeed + 1);
    const auto va = a.vector(16);
    CHECK(va == b.vector(16));
    CHECK(va != c.vector(16));
    SampleStream d(7);
    for (int i = 0; i < 1000; ++i) {
      const double u = d.uniform();
      CHECK((u >= -1.0 && u < 1.0));
    }
  }

  TEST_CASE("Rayleigh quotients") {
    const ExactEngine e = fixtures::engine("kodaira_thurston");
    for (Bidegree b : e.basis().all_bidegrees()) {
      const ExactMatrix L = e.assemble(LaplacianKind::BC, b);
      const NumericMatrix A = to_numeric(L), G = to_numeric(e.metric().gram(b));
      const Spectrum s = spectrum(A, G);
      const RayleighReport r = verify_gap_inequality(A, G, to_numeric(Subspace::kernel(L).basis()), s, 200, 5);
      CHECK(r.passed);
      CHECK(r.vacuous == s.all_zero());
      if (!r.vacuous) CHECK(r.min_quotient >= s.gap.value() - 1e-9 * s.max);
    }
    const NumericMatrix A = diag({0.0, 1.0, 4.0});
    const NumericMatrix G = diag({1.0, 1.0, 1.0});
    NumericMatrix ker(3, 1);
    ker(0, 0) = 1.0;
    const std::vector<Complex> x{1.0, 2.0, 3.0};
    const auto y = project_off(ker, G, x);
    CHECK(std::abs(y[0]) < 1e-15);
    CHECK(real_inner(G, y, y) == doctest::Approx(13.0));
  }
}
