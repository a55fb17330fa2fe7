#include "fixtures.hpp"

#include "abch/error.hpp"
#include "abch/spectrum.hpp"

#include <doctest.h>

using namespace abch;

namespace {

std::vector<std::pair<std::string, long>> cases() {
  std::vector<std::pair<std::string, long>> out;
  for (const auto& name : fixtures::names())
    for (long first : {1L, 2L}) out.emplace_back(name, first);
  return out;
}

}  // namespace

TEST_SUITE("laplacian") {
  TEST_CASE("names round trip") {
    for (LaplacianKind k : kAllLaplacians) CHECK(laplacian_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(laplacian_from_string("Delta_X"), Error);
  }

  TEST_CASE("self-adjoint, nonnegative, bidegree preserving") {
    for (const auto& [name, first] : cases()) {
      CAPTURE(name);
      CAPTURE(first);
      const ExactEngine e = fixtures::engine(name, first);
      const ExactMatrix& G = e.metric().gram();
      const FormBasis& basis = e.basis();
      for (LaplacianKind kind : kAllLaplacians) {
        CAPTURE(to_string(kind));
        const ExactMatrix& L = e.global(kind);
        CHECK(G * L == L.adjoint() * G);
        if (kind != LaplacianKind::D) {
          for (Bidegree b : basis.all_bidegrees())
            for (Bidegree c : basis.all_bidegrees())
              if (b != c) CHECK(restrict_op(basis, L, {b}, {c}).is_zero());
        }
        for (Bidegree b : basis.all_bidegrees()) {
          const Spectrum s = spectrum(to_numeric(e.assemble(kind, b)), to_numeric(e.metric().gram(b)));
          CHECK(s.eigenvalues.front() >= 0.0);
        }
      }
    }
  }

  TEST_CASE("adjoints through the star") {
    for (const auto& [name, first] : cases()) {
      const ExactEngine e = fixtures::engine(name, first);
      const ExactMatrix& S = e.metric().star();
      CHECK(e.del_star() == GaussianRational(-1) * (S * e.delbar() * S));
      CHECK(e.delbar_star() == GaussianRational(-1) * (S * e.del() * S));
    }
  }

  TEST_CASE("harmonic spaces match their first-order description") {
    for (const auto& [name, first] : cases()) {
      CAPTURE(name);
      const ExactEngine e = fixtures::engine(name, first);
      for (Bidegree b : e.basis().all_bidegrees())
        for (LaplacianKind kind : kAllLaplacians) {
          if (kind == LaplacianKind::D) continue;
          CAPTURE(to_string(kind));
          CHECK(harmonic_space(e, kind, b) == harmonic_space_characterized(e, kind, b));
        }
    }
  }

  TEST_CASE("kernel coincidence and duality") {
    for (const auto& [name, first] : cases()) {
      CAPTURE(name);
      const ExactEngine e = fixtures::engine(name, first);
      for (Bidegree b : e.basis().all_bidegrees()) {
        const KernelCoincidence k = kernel_coincidence(e, b);
        CHECK(k.bc);
        CHECK(k.aeppli);
        CHECK(k.box_intersection);
      }
      CHECK(duality(e).all());
    }
  }

  TEST_CASE("Kahler identities hold on tori and fail on Iwasawa") {
    for (const char* name : {"torus1", "torus2"})
      for (long first : {1L, 2L}) CHECK(kahler_identities(fixtures::engine(name, first)).all());
    const ExactComplex c = build_complex(fixtures::model("torus2"));
    const ExactEngine skew(c, build_metric(c, *load_metric(fixtures::path("complex_n2.herm")).exact));
    CHECK(kahler_identities(skew).all());
    const KahlerIdentities iw = kahler_identities(fixtures::engine("iwasawa"));
    CHECK_FALSE(iw.d_is_twice_delbar);
    CHECK_FALSE(iw.all());
  }

  TEST_CASE("de Rham block") {
    const ExactEngine e = fixtures::engine("iwasawa");
    for (int k = 0; k <= 6; ++k) {
      const Sectors s = e.basis().bidegrees_of_degree(k);
      CHECK(e.de_rham(k) == e.block(e.global(LaplacianKind::D), s, s));
    }
  }

  TEST_CASE("chain operator ordering") {
    for (const char* name : {"torus2", "kodaira_thurston", "iwasawa"}) {
      const ExactEngine e = fixtures::engine(name);
      const int n = e.basis().n();
      for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q) {
          const ChainOperators<GaussianRational> ch = chain_operators(e, {p, q});
          const ExactMatrix G = e.metric().gram(ch.sectors);
          const ExactMatrix diff = ch.box_prime - ch.delbar_laplacian;
          CHECK(G * diff == diff.adjoint() * G);
          const Spectrum s = spectrum(to_numeric(diff), to_numeric(G));
          CHECK(s.eigenvalues.front() >= 0.0);
        }
    }
  }
}
