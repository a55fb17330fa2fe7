#include "fixtures.hpp"

#include "abch_cli/run.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace abch;
using namespace abch::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(RunConfig config) {
  std::ostringstream out, err;
  const int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& model, Format format = Format::Json) {
  RunConfig c;
  c.command = command;
  c.model = fixtures::path(model + ".cplx");
  c.format = format;
  c.samples = 50;
  return c;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("every command succeeds on the torus") {
    for (const std::string& command : kCommands) {
      CAPTURE(command);
      RunConfig c = config(command, command == "cover" ? "torus1" : "torus2");
      if (command == "cover") c.cover = fixtures::path("index2.cover");
      if (command == "abc") c.pq = Bidegree{1, 1};
      const Outcome o = invoke(c);
      CHECK(o.code == kOk);
      CHECK(o.err.empty());
      const auto j = nlohmann::json::parse(o.out);
      CHECK(j["schema"] == "abch-report-1");
      CHECK(j["command"] == command);
      CHECK(j["passed"] == true);
    }
  }

  TEST_CASE("cohomology report carries the tables") {
    const auto j = nlohmann::json::parse(invoke(config("cohomology", "iwasawa")).out);
    CHECK(j["tables"]["BC"][1][0] == 2);
    CHECK(j["tables"]["delbar"][1][0] == 3);
    CHECK(j["tables"]["delbar"][0][1] == 2);
    CHECK(j["model"] == "iwasawa");
  }

  TEST_CASE("output is deterministic") {
    RunConfig c = config("spectra", "kodaira_thurston");
    const Outcome a = invoke(c), b = invoke(c);
    CHECK(a.out == b.out);
    c.format = Format::Markdown;
    CHECK(invoke(c).out == invoke(c).out);
    c.format = Format::Csv;
    CHECK(invoke(c).out.rfind("info,command,spectra", 0) == 0);
  }

  TEST_CASE("markdown layout") {
    const Outcome o = invoke(config("ddbar", "torus2", Format::Markdown));
    CHECK(o.out.rfind("# abch ddbar: torus2", 0) == 0);
    CHECK(o.out.find("## checks") != std::string::npos);
    CHECK(o.out.find("[FAIL]") == std::string::npos);
  }

  TEST_CASE("exit codes") {
    const Outcome bad = invoke(config("check", "bad"));
    CHECK(bad.code == kVerificationFailed);
    CHECK(nlohmann::json::parse(bad.out)["passed"] == false);

    RunConfig missing = config("check", "missing");
    CHECK(invoke(missing).code == kInputError);

    RunConfig decimal = config("check", "torus1");
    const std::string herm = "/tmp/abch_cli_test_decimal.herm";
    {
      std::ofstream f(herm);
      f << "n = 1\nH[1][1] = 0.5\n";
    }
    decimal.metric = herm;
    decimal.backend = Backend::Exact;
    const Outcome d = invoke(decimal);
    CHECK(d.code == kInputError);
    CHECK(d.err.rfind("error: ", 0) == 0);
    decimal.backend = Backend::Numeric;
    CHECK(invoke(decimal).code == kOk);

    RunConfig abc = config("abc", "iwasawa");
    abc.pq = Bidegree{0, 2};
    CHECK(invoke(abc).code == kInputError);

    RunConfig cover = config("cover", "torus1");
    CHECK(invoke(cover).code == kInputError);
  }

  TEST_CASE("bidegree arguments") {
    CHECK(parse_pq("1,2") == Bidegree{1, 2});
    CHECK(parse_pq("0,3") == Bidegree{0, 3});
    CHECK_THROWS(parse_pq("x"));
  }

  TEST_CASE("matrix serialization") {
    ExactMatrix m(1, 2);
    m(0, 0) = GaussianRational(mpq_class(1, 2), mpq_class(-3));
    const auto j = matrix_json(m);
    CHECK(j["schema"] == "abch-matrix-1");
    CHECK(j["rows"] == 1);
    CHECK(j["entries"][0][0] == nlohmann::json::array({1, 2, -3, 1}));
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  }
}
