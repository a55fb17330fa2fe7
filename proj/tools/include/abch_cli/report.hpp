#pragma once

#include "abch/matrix.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace abch::cli {

enum class Format { Markdown, Json, Csv };

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Everything a command produces. Markdown and CSV render `tables` and `checks`; JSON renders
/// `data` plus the checks, so tables there keep their numeric shape.
struct Report {
  std::string command;
  std::string model;
  std::string metric_hash;
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<Table> tables;
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();

  void check(std::string name, bool passed, std::string detail = {});
  bool passed() const;
};

std::string render(const Report& report, Format format);

/// Row-major entries [re_num, re_den, im_num, im_den] under schema "abch-matrix-1".
nlohmann::json matrix_json(const ExactMatrix& m);
/// Entries [re, im].
nlohmann::json matrix_json(const NumericMatrix& m);

/// 12 significant digits, the rendering used in every table.
std::string format_double(double x);

}  // namespace abch::cli
