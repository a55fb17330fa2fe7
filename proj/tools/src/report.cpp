#include "abch_cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace abch::cli {

void Report::check(std::string name, bool passed, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(detail)});
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

nlohmann::json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

std::string markdown(const Report& r) {
  std::ostringstream out;
  out << "# abch " << r.command << ": " << r.model << "\n\n";
  if (!r.metric_hash.empty()) out << "- metric: `" << r.metric_hash << "`\n";
  for (const auto& [k, v] : r.info) out << "- " << k << ": " << v << "\n";
  out << "\n";
  for (const auto& t : r.tables) {
    out << "## " << t.name << "\n\n|";
    for (const auto& c : t.columns) out << " " << c << " |";
    out << "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& row : t.rows) {
      out << "|";
      for (const auto& cell : row) out << " " << cell << " |";
      out << "\n";
    }
    out << "\n";
  }
  out << "## checks\n\n";
  for (const auto& c : r.checks) {
    out << "- [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  out << "\n" << (r.passed() ? "all checks passed" : "some checks FAILED") << "\n";
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv(const Report& r) {
  std::ostringstream out;
  auto line = [&](const std::string& table, const std::vector<std::string>& cells) {
    out << csv_field(table);
    for (const auto& c : cells) out << "," << csv_field(c);
    out << "\n";
  };
  line("info", {"command", r.command});
  line("info", {"model", r.model});
  if (!r.metric_hash.empty()) line("info", {"metric", r.metric_hash});
  for (const auto& [k, v] : r.info) line("info", {k, v});
  for (const auto& t : r.tables) {
    line("table", {t.name});
    line(t.name, t.columns);
    for (const auto& row : t.rows) line(t.name, row);
  }
  for (const auto& c : r.checks) line("check", {c.name, c.passed ? "pass" : "fail", c.detail});
  return out.str();
}

std::string json(const Report& r) {
  nlohmann::json j = r.data;
  j["schema"] = "abch-report-1";
  j["command"] = r.command;
  j["model"] = r.model;
  if (!r.metric_hash.empty()) j["metric_hash"] = r.metric_hash;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["passed"] = r.passed();
  return j.dump(2) + "\n";
}

}  // namespace

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::Markdown: return markdown(report);
    case Format::Json: return json(report);
    case Format::Csv: return csv(report);
  }
  return {};
}

nlohmann::json matrix_json(const ExactMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const GaussianRational& x = m(r, c);
      row.push_back({integer(x.re().get_num()), integer(x.re().get_den()), integer(x.im().get_num()),
                     integer(x.im().get_den())});
    }
    rows.push_back(std::move(row));
  }
  return {{"schema", "abch-matrix-1"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

nlohmann::json matrix_json(const NumericMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"schema", "abch-matrix-1"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

}  // namespace abch::cli
