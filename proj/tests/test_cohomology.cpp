#include "fixtures.hpp"
#include "oracle.hpp"

#include "abch/cohomology.hpp"
#include "abch/error.hpp"

#include <doctest.h>

using namespace abch;

namespace {

using Grid = std::vector<std::vector<long>>;

const Grid kIwasawaDelbar{{1, 2, 2, 1}, {3, 6, 6, 3}, {3, 6, 6, 3}, {1, 2, 2, 1}};
const Grid kIwasawaBC{{1, 2, 3, 1}, {2, 4, 6, 2}, {3, 6, 8, 3}, {1, 2, 3, 1}};
const Grid kIwasawaA{{1, 3, 2, 1}, {3, 8, 6, 3}, {2, 6, 4, 2}, {1, 3, 2, 1}};

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::Del: return "del";
    case Theory::Delbar: return "delbar";
    case Theory::BC: return "BC";
    default: return "A";
  }
}

}  // namespace

TEST_SUITE("cohomology") {
  TEST_CASE("rank-nullity agrees with the brute-force oracle") {
    for (const auto& name : fixtures::names()) {
      CAPTURE(name);
      const ComplexModel m = fixtures::model(name);
      const ExactComplex c = build_complex(m);
      for (Theory t : {Theory::Del, Theory::Delbar, Theory::BC, Theory::A}) {
        CAPTURE(to_string(t));
        const CohomologyTable table = cohomology(t, c);
        for (Bidegree b : c.basis().all_bidegrees())
          CHECK(table.at(b.p, b.q) == oracle::cohomology(m, theory_name(t), b));
      }
    }
  }

  TEST_CASE("harmonic spaces reproduce the tables for two metrics") {
    for (const auto& name : fixtures::names())
      for (long first : {1L, 2L}) {
        CAPTURE(name);
        const ExactEngine e = fixtures::engine(name, first);
        for (Theory t : kAllTheories) CHECK(harmonic_table(t, e) == cohomology(t, e.complex()));
      }
  }

  TEST_CASE("tori have binomial tables") {
    for (int n : {1, 2}) {
      const ExactComplex c = build_complex(fixtures::model("torus" + std::to_string(n)));
      for (Theory t : {Theory::Del, Theory::Delbar, Theory::BC, Theory::A})
        for (int p = 0; p <= n; ++p)
          for (int q = 0; q <= n; ++q)
            CHECK(cohomology(t, c).at(p, q) == oracle::binomial(n, p) * oracle::binomial(n, q));
      for (int k = 0; k <= 2 * n; ++k) CHECK(cohomology(Theory::DeRham, c).at(0, k) == oracle::binomial(2 * n, k));
    }
  }

  TEST_CASE("Iwasawa tables") {
    const ExactComplex c = build_complex(fixtures::model("iwasawa"));
    CHECK(cohomology(Theory::Delbar, c).grid == kIwasawaDelbar);
    CHECK(cohomology(Theory::BC, c).grid == kIwasawaBC);
    CHECK(cohomology(Theory::A, c).grid == kIwasawaA);
    CHECK(cohomology(Theory::DeRham, c).grid == Grid{{1, 4, 8, 10, 8, 4, 1}});
    CHECK(cohomology(Theory::Delbar, c).at(1, 0) == 3);
    CHECK(cohomology(Theory::Delbar, c).at(0, 1) == 2);
    CHECK(cohomology(Theory::BC, c).at(1, 0) == 2);
    CHECK(cohomology(Theory::BC, c).at(4, 0) == 0);
  }

  TEST_CASE("symmetries of the tables") {
    for (const auto& name : fixtures::names()) {
      const ExactComplex c = build_complex(fixtures::model(name));
      const TableSymmetries s = table_symmetries(cohomology(Theory::Del, c), cohomology(Theory::Delbar, c),
                                                 cohomology(Theory::BC, c), cohomology(Theory::A, c));
      CHECK(s.all());
    }
  }

  TEST_CASE("orthogonal decompositions") {
    for (const auto& name : fixtures::names())
      for (long first : {1L, 2L}) {
        CAPTURE(name);
        const ExactEngine e = fixtures::engine(name, first);
        for (Bidegree b : e.basis().all_bidegrees())
          for (Theory t : {Theory::BC, Theory::A, Theory::Delbar, Theory::Del}) {
            const DecompositionReport r = verify_hodge_decomposition(e, t, b);
            CHECK(r.ok());
            CHECK(r.dims[0] + r.dims[1] + r.dims[2] == e.basis().dim(b));
          }
      }
    CHECK_THROWS_AS(verify_hodge_decomposition(fixtures::engine("torus1"), Theory::DeRham, {0, 0}), Error);
  }

  TEST_CASE("diagram of induced maps") {
    const DiagramReport torus = diagram_maps(fixtures::engine("torus2"));
    CHECK(torus.arrows.size() == 7 * 5);
    CHECK(torus.commutes);
    CHECK(torus.all_isomorphisms());
    const DiagramReport iw = diagram_maps(fixtures::engine("iwasawa"));
    CHECK(iw.commutes);
    CHECK_FALSE(iw.all_isomorphisms());
    for (const DiagramArrow& a : iw.arrows) CHECK(a.rank <= std::min(a.src_dim, a.dst_dim));
  }

  TEST_CASE("ddbar conditions") {
    const DdbarReport torus = ddbar_conditions(build_complex(fixtures::model("torus2")));
    CHECK(torus.all_hold());
    CHECK(torus.all_agree());
    const DdbarReport iw = ddbar_conditions(build_complex(fixtures::model("iwasawa")));
    for (const DdbarCondition& c : iw.conditions) {
      CAPTURE(c.label);
      CHECK_FALSE(c.holds);
      REQUIRE(c.failing_degree);
      CHECK(*c.failing_degree == (c.label <= 'c' ? 2 : 1));
      CHECK_FALSE(c.witness.empty());
    }
  }

  TEST_CASE("inequality and its defect") {
    const InequalityReport torus = inequality_report(fixtures::engine("torus2"));
    CHECK(torus.holds());
    CHECK(torus.equality_everywhere());
    const InequalityReport kt = inequality_report(fixtures::engine("kodaira_thurston"));
    CHECK(kt.holds());
    CHECK(kt.strict_somewhere());
    for (const InequalityCell& c : kt.cells) {
      CHECK(c.rhs - c.lhs == (c.bidegree == Bidegree{1, 1} ? 2 : 0));
      CHECK(c.a_plus_f == c.rhs - c.lhs);
    }
    // Iwasawa: the identity holds with a + f = 0 everywhere.
    const InequalityReport iw = inequality_report(fixtures::engine("iwasawa"));
    CHECK(iw.holds());
    CHECK(iw.equality_everywhere());
    for (const InequalityCell& c : iw.cells) CHECK(c.identity);
  }

  TEST_CASE("subspaces from intersections and quotients agree") {
    for (const auto& name : fixtures::names()) {
      const ExactEngine e = fixtures::engine(name);
      std::vector<AbcSubspaceDims> all;
      for (Bidegree b : e.basis().all_bidegrees()) {
        all.push_back(abc_subspaces(e, b));
        CHECK(all.back().agree());
      }
      CHECK(abc_conjugation_symmetric(all, e.basis().n()));
    }
  }

  TEST_CASE("exact sequences") {
    for (const auto& name : fixtures::names())
      for (long first : {1L, 2L}) {
        CAPTURE(name);
        const ExactEngine e = fixtures::engine(name, first);
        for (Bidegree b : e.basis().all_bidegrees())
          for (const SequenceReport& s : verify_exact_sequences(e, b)) {
            CHECK(s.exact());
            CHECK(s.alternating_sum == 0);
            CHECK(s.nodes.size() == 5);
          }
      }
  }

  TEST_CASE("full ABC complex on Iwasawa") {
    const ExactEngine e = fixtures::engine("iwasawa");
    const CohomologyTable bc = cohomology(Theory::BC, e.complex());
    const CohomologyTable a = cohomology(Theory::A, e.complex());
    for (Bidegree b : {Bidegree{1, 1}, Bidegree{2, 1}, Bidegree{2, 2}}) {
      const AbcFullComplex f = full_abc_complex(e, b);
      CHECK(f.ok());
      CHECK(f.squares_zero);
      CHECK(f.corner_laplacians_match);
      CHECK(f.euler_spaces == f.euler_cohomology);
      CHECK(f.h_bc == bc.at(b.p, b.q));
      CHECK(f.h_a == a.at(b.p - 1, b.q - 1));
      CHECK(f.spaces.size() == 7);
      CHECK(f.h == f.laplacian_kernel);
    }
    CHECK_THROWS_AS(full_abc_complex(e, {0, 1}), Error);
  }
}
