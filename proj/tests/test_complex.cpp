#include "fixtures.hpp"
#include "oracle.hpp"

#include "abch/error.hpp"
#include "abch/linalg.hpp"

#include <doctest.h>

using namespace abch;

TEST_SUITE("complex") {
  TEST_CASE("basis dimensions are binomial") {
    for (int n = 1; n <= 3; ++n) {
      const FormBasis basis(n);
      CHECK(basis.dim() == static_cast<std::size_t>(1) << (2 * n));
      for (Bidegree b : basis.all_bidegrees()) {
        CHECK(basis.dim(b) == static_cast<std::size_t>(oracle::binomial(n, b.p) * oracle::binomial(n, b.q)));
        for (std::size_t i = 0; i < basis.dim(b); ++i) {
          const std::size_t g = basis.offset(b) + i;
          CHECK(basis.index(basis.monomial(g)) == g);
          CHECK(basis.bidegree_of(g) == b);
        }
      }
    }
  }

  TEST_CASE("del and delbar blocks match the brute-force expansion") {
    for (const auto& name : fixtures::names()) {
      CAPTURE(name);
      const ComplexModel m = fixtures::model(name);
      const ExactComplex c = build_complex(m);
      for (Bidegree b : c.basis().all_bidegrees()) {
        CAPTURE(to_string(b));
        if (b.p < m.n) CHECK(c.del(b) == oracle::block(m, c.basis(), oracle::Part::Del, b));
        if (b.q < m.n) CHECK(c.delbar(b) == oracle::block(m, c.basis(), oracle::Part::Delbar, b));
      }
    }
  }

  TEST_CASE("the complex squares to zero on every fixture") {
    for (const auto& name : fixtures::names()) {
      const ExactComplex c = build_complex(fixtures::model(name));
      CHECK((c.del() * c.del()).is_zero());
      CHECK((c.delbar() * c.delbar()).is_zero());
      CHECK((c.del() * c.delbar() + c.delbar() * c.del()).is_zero());
    }
  }

  TEST_CASE("a non-integrable model is rejected") {
    try {
      build_complex(fixtures::model("bad"));
      FAIL("expected NotAComplex");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAComplex);
      CHECK(e.detail().find("A^(1,0)") != std::string::npos);
    }
  }

  TEST_CASE("Leibniz rule for wedge products") {
    const ComplexModel m = fixtures::model("iwasawa");
    const ExactComplex c = build_complex(m);
    const FormBasis& basis = c.basis();
    // For 1-forms a, b: d(a ^ b) = da ^ b - a ^ db, and da ^ b = b ^ da.
    for (auto [ab, bb] : {std::pair{Bidegree{1, 0}, Bidegree{0, 1}}, std::pair{Bidegree{1, 0}, Bidegree{1, 0}}}) {
      FormVector<GaussianRational> a{ab, std::vector<GaussianRational>(basis.dim(ab))};
      FormVector<GaussianRational> b{bb, std::vector<GaussianRational>(basis.dim(bb))};
      a.coeffs[0] = GaussianRational(1);
      a.coeffs.back() = GaussianRational::i();
      b.coeffs.back() = GaussianRational(-2);
      b.coeffs[0] = GaussianRational(mpq_class(1, 3));
      const auto ab_global = to_global(basis, wedge(basis, a, b));
      const auto lhs = c.d().apply(ab_global);
      const auto da = c.d().apply(to_global(basis, a));
      const auto db = c.d().apply(to_global(basis, b));
      const auto rhs1 = left_wedge(basis, a).apply(db);
      const auto rhs0 = left_wedge(basis, b).apply(da);
      for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == rhs0[i] - rhs1[i]);
    }
  }

  TEST_CASE("wedge overflow") {
    const FormBasis basis(1);
    FormVector<GaussianRational> a{{1, 0}, {GaussianRational(1)}};
    CHECK_THROWS_AS(wedge(basis, a, a), Error);
  }

  TEST_CASE("conjugation swaps bidegrees and is an involution") {
    const FormBasis basis(2);
    const ExactMatrix C = conjugation_matrix(basis);
    CHECK(C * C == ExactMatrix::identity(basis.dim()));
    const ExactComplex c = build_complex(fixtures::model("kodaira_thurston"));
    // conj(del x) = delbar conj(x): C conj(D) = Dbar C
    CHECK(C * c.del().conjugate() == c.delbar() * C);
    FormVector<GaussianRational> a{{1, 0}, {GaussianRational(0, 1), GaussianRational(2)}};
    const auto ca = conjugate(basis, a);
    CHECK(ca.bidegree == Bidegree{0, 1});
    CHECK(conjugate(basis, ca) == a);
  }

  TEST_CASE("numeric copy") {
    const ExactComplex c = build_complex(fixtures::model("iwasawa"));
    const NumericComplex nc = to_numeric(c);
    CHECK(frobenius_norm(nc.del() - to_numeric(c.del())) == 0.0);
    CHECK(nc.n() == 3);
  }
}
