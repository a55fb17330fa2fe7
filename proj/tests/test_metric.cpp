#include "fixtures.hpp"
#include "oracle.hpp"

#include "abch/error.hpp"
#include "abch/linalg.hpp"

#include <doctest.h>

using namespace abch;

namespace {

ExactMatrix herm3() {
  const MetricSpec s = parse_metric(
      "n=3\nH[1][1] = 3\nH[2][2] = 2\nH[3][3] = 5/2\nH[1][2] = (1 + i)\nH[2][3] = -1/2 i\nH[1][3] = 1/3");
  return *s.exact;
}

std::vector<ExactMatrix> metrics(int n) {
  std::vector<ExactMatrix> out{*identity_metric(n).exact, *diagonal_metric(n, 2).exact};
  if (n == 2) out.push_back(*load_metric(fixtures::path("complex_n2.herm")).exact);
  if (n == 3) out.push_back(herm3());
  return out;
}

std::vector<GaussianRational> sample_vector(std::size_t dim, long salt) {
  std::vector<GaussianRational> v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const long k = static_cast<long>(i) + salt;
    v[i] = GaussianRational(mpq_class((k * 7) % 5 - 2, 1 + k % 3), mpq_class((k * 3) % 7 - 3, 2));
  }
  return v;
}

ErrorKind metric_error(const std::string& text) {
  try {
    parse_metric(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for: " << text);
  return ErrorKind::InputError;
}

}  // namespace

TEST_SUITE("metric") {
  TEST_CASE("Gram matrix matches the determinant rule") {
    for (int n = 1; n <= 3; ++n) {
      const FormBasis basis(n);
      for (const ExactMatrix& H : metrics(n)) {
        const ExactMetric m = build_metric(basis, H);
        CHECK(m.gram().adjoint() == m.gram());
        for (Bidegree b : basis.all_bidegrees()) {
          const ExactMatrix G = m.gram(b);
          for (std::size_t i = 0; i < basis.dim(b); ++i)
            for (std::size_t j = 0; j < basis.dim(b); ++j) {
              const auto& ei = basis.monomial(basis.offset(b) + i);
              const auto& ej = basis.monomial(basis.offset(b) + j);
              CHECK(G(i, j) == oracle::gram_entry(H, ej, ei));
            }
        }
        CHECK(m.gram() * m.gram_inverse() == ExactMatrix::identity(basis.dim()));
      }
    }
  }

  TEST_CASE("volume coefficient and unit volume") {
    for (int n = 1; n <= 3; ++n) {
      const FormBasis basis(n);
      for (const ExactMatrix& H : metrics(n)) {
        const ExactMetric m = build_metric(basis, H);
        GaussianRational expected = GaussianRational(1) / oracle::det(H);
        for (int k = 0; k < n; ++k) expected *= GaussianRational::i();
        if ((n * (n - 1) / 2) % 2) expected = -expected;
        CHECK(m.vol_coeff() == expected);
        std::vector<GaussianRational> vol(basis.dim());
        vol.back() = m.vol_coeff();
        CHECK(m.inner(vol, vol) == GaussianRational(1));
        CHECK(volume_coefficient(basis, m.fundamental_form()) == m.vol_coeff());
      }
    }
  }

  TEST_CASE("fundamental form of the standard metric") {
    const FormBasis basis(2);
    const auto omega = fundamental_form(basis, *identity_metric(2).exact);
    CHECK(omega.bidegree == Bidegree{1, 1});
    CHECK(omega.coeffs[basis.index({1, 1}) - basis.offset({1, 1})] == GaussianRational::i());
    CHECK(omega.coeffs[basis.index({2, 2}) - basis.offset({1, 1})] == GaussianRational::i());
    CHECK(omega.coeffs[basis.index({1, 2}) - basis.offset({1, 1})] == GaussianRational(0));
  }

  TEST_CASE("Hodge star identities") {
    for (int n = 1; n <= 3; ++n) {
      const FormBasis basis(n);
      for (const ExactMatrix& H : metrics(n)) {
        const ExactMetric m = build_metric(basis, H);
        const ExactMatrix& S = m.star();
        ExactMatrix sign(basis.dim(), basis.dim());
        for (std::size_t i = 0; i < basis.dim(); ++i)
          sign(i, i) = GaussianRational(basis.bidegree_of(i).degree() % 2 ? -1 : 1);
        CHECK(S * S == sign);
        CHECK(S.adjoint() * m.gram() * S == m.gram());
        // x ^ *conj(y) = <x, y> vol on A^{p,q}
        const ExactMatrix C = conjugation_matrix(basis);
        for (Bidegree b : basis.all_bidegrees()) {
          FormVector<GaussianRational> x{b, sample_vector(basis.dim(b), 1)};
          FormVector<GaussianRational> y{b, sample_vector(basis.dim(b), 4)};
          const auto gx = to_global(basis, x);
          const auto gy = to_global(basis, y);
          std::vector<GaussianRational> bar(gy.size());
          for (std::size_t i = 0; i < gy.size(); ++i) bar[i] = gy[i].conj();
          const auto star_conj_y = S.apply(C.apply(bar));
          const auto top = left_wedge(basis, x).apply(star_conj_y);
          CHECK(top.back() == m.inner(gx, gy) * m.vol_coeff());
        }
      }
    }
  }

  TEST_CASE("Gram adjoint") {
    const ExactComplex c = build_complex(fixtures::model("iwasawa"));
    const ExactMetric m = build_metric(c, herm3());
    const ExactMatrix T = m.adjoint(c.delbar());
    const auto x = sample_vector(c.basis().dim(), 2);
    const auto y = sample_vector(c.basis().dim(), 9);
    CHECK(m.inner(c.delbar().apply(x), y) == m.inner(x, T.apply(y)));
    CHECK(m.adjoint(T) == c.delbar());
  }

  TEST_CASE("metric parsing") {
    const MetricSpec s = load_metric(fixtures::path("complex_n2.herm"));
    REQUIRE(s.exact);
    CHECK((*s.exact)(1, 0) == GaussianRational(mpq_class(1, 2), mpq_class(-1, 3)));
    CHECK(std::abs(s.numeric(0, 1) - Complex(0.5, 1.0 / 3.0)) < 1e-15);
    const MetricSpec dec = parse_metric("n=1\nH[1][1] = 0.5");
    CHECK_FALSE(dec.exact);
    CHECK(dec.numeric(0, 0).real() == 0.5);
    CHECK(metric_error("n=2\nH[1][1] = 1\nH[1][1] = 2") == ErrorKind::DuplicateEquation);
    CHECK(metric_error("n=2\nH[3][1] = 1") == ErrorKind::UnknownGenerator);
    try {
      build_metric(FormBasis(1), *parse_metric("n=1\nH[1][1] = -1").exact);
      FAIL("expected NotPositiveDefinite");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
    }
    CHECK_THROWS_AS(build_metric(FormBasis(2), *identity_metric(3).exact), Error);
  }

  TEST_CASE("metric hash") {
    CHECK(metric_hash(identity_metric(2)) == metric_hash(identity_metric(2)));
    CHECK(metric_hash(identity_metric(2)) != metric_hash(diagonal_metric(2, 2)));
    CHECK(metric_hash(identity_metric(2)).size() == 16);
  }

  TEST_CASE("Kahler detection") {
    CHECK(is_kahler(fixtures::engine("torus2")));
    CHECK(is_kahler(fixtures::engine("torus1", 2)));
    CHECK_FALSE(is_kahler(fixtures::engine("iwasawa")));
    CHECK_FALSE(is_kahler(fixtures::engine("kodaira_thurston")));
  }
}
