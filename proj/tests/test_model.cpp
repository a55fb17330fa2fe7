#include "fixtures.hpp"

#include "abch/error.hpp"

#include <doctest.h>

using namespace abch;

namespace {

ErrorKind kind_of(const std::string& text, int* line = nullptr, int* column = nullptr) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    if (line) *line = e.line();
    if (column) *column = e.column();
    return e.kind();
  }
  FAIL("no error for: " << text);
  return ErrorKind::InputError;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("iwasawa equation") {
    const ComplexModel m = parse_model("n=3; d phi3 = -1 * phi1 ^ phi2");
    CHECK(m.n == 3);
    CHECK(m.d20[2].size() == 1);
    CHECK(m.d20[2].at({1, 2}) == GaussianRational(-1));
    CHECK(m.d11[2].empty());
    CHECK(m.d20[0].empty());
    CHECK_FALSE(m.is_flat());
  }

  TEST_CASE("terms are stored with increasing indices") {
    const ComplexModel m = parse_model("n=2; d phi2 = phi2 ^ phi1");
    CHECK(m.d20[1].at({1, 2}) == GaussianRational(-1));
  }

  TEST_CASE("coefficients") {
    const ComplexModel m = parse_model("n=2\nd phi2 = 2/3 * phi1 ^ phibar1 - i * phi1 ^ phibar2");
    CHECK(m.d11[1].at({1, 1}) == GaussianRational(mpq_class(2, 3)));
    CHECK(m.d11[1].at({1, 2}) == GaussianRational(0, -1));
    CHECK(parse_coefficient("(1/2 + 3 i)") == GaussianRational(mpq_class(1, 2), 3));
    CHECK(parse_coefficient("-2") == GaussianRational(-2));
  }

  TEST_CASE("comments and CRLF") {
    const ComplexModel m = parse_model("n=2 # surface\r\nd phi2 = phi1 ^ phibar1 # KT\r\n");
    CHECK(m == parse_model("n=2; d phi2 = phi1 ^ phibar1"));
  }

  TEST_CASE("round trip through render") {
    for (const auto& name : fixtures::names()) {
      const ComplexModel m = fixtures::model(name);
      CHECK(parse_model(render_model(m)) == m);
    }
    const ComplexModel m = parse_model("n=2\nd phi2 = (1 + 2i) * phi1 ^ phibar1 - 3/4 * phi1 ^ phibar2");
    CHECK(parse_model(render_model(m)) == m);
  }

  TEST_CASE("errors carry kind and position") {
    int line = 0, column = 0;
    CHECK(kind_of("n=2; d phi3 = phi1^phi2", &line, &column) == ErrorKind::UnknownGenerator);
    CHECK(line == 1);
    CHECK(column == 8);
    CHECK(kind_of("n=2\nd phi2 = phibar1 ^ phibar2", &line) == ErrorKind::BidegreeViolation);
    CHECK(line == 2);
    CHECK(kind_of("n=2\nd phi2 = phi1 ^ phi1x") == ErrorKind::SyntaxError);
    CHECK(kind_of("n=2\nd phi2 = phi1^phi2\nd phi2 = phi1^phibar1", &line) == ErrorKind::DuplicateEquation);
    CHECK(line == 3);
    CHECK(kind_of("n=7") == ErrorKind::SyntaxError);
    CHECK(kind_of("n=2\nd phibar2 = phi1^phi2") == ErrorKind::SyntaxError);
    CHECK(kind_of("n=2\nd phi2 = phi1 ^ phibar3") == ErrorKind::UnknownGenerator);
  }

  TEST_CASE("fixtures") {
    CHECK(fixtures::model("torus2").is_flat());
    CHECK(fixtures::model("kodaira_thurston").d11[1].at({1, 1}) == GaussianRational(1));
    CHECK(fixtures::model("iwasawa").name == "iwasawa");
    CHECK_THROWS_AS(load_model(fixtures::path("missing.cplx")), Error);
  }
}
