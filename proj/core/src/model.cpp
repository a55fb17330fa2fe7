#include "abch/model.hpp"

#include "abch/error.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace abch {

bool ComplexModel::is_flat() const {
  for (const auto& t : d20)
    if (!t.empty()) return false;
  for (const auto& t : d11)
    if (!t.empty()) return false;
  return true;
}

namespace {

struct Generator {
  int index = 0;
  bool bar = false;
};

/// Cursor over one statement; columns are reported 1-based relative to the full line.
class StatementParser {
 public:
  StatementParser(std::string_view text, int line, int column_offset)
      : text_(text), line_(line), offset_(column_offset) {}

  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const {
    throw Error(kind, msg, line_, offset_ + static_cast<int>(pos_) + 1);
  }
  [[noreturn]] void fail_at(ErrorKind kind, const std::string& msg, std::size_t pos) const {
    throw Error(kind, msg, line_, offset_ + static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(ErrorKind::SyntaxError, std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end])) && !std::isdigit(static_cast<unsigned char>(text_[end])))
      return false;
    pos_ = end;
    return true;
  }
  std::string_view rest() {
    skip_ws();
    return text_.substr(pos_);
  }
  std::size_t pos() const { return pos_; }

  long parse_int() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(ErrorKind::SyntaxError, "expected integer");
    if (pos_ - start > 9) fail_at(ErrorKind::SyntaxError, "integer too large", start);
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  std::optional<Generator> parse_generator() {
    skip_ws();
    const std::size_t start = pos_;
    Generator g;
    if (accept_prefix("phibar")) {
      g.bar = true;
    } else if (accept_prefix("phi")) {
      g.bar = false;
    } else {
      return std::nullopt;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(ErrorKind::SyntaxError, "generator index expected after '" + std::string(text_.substr(start, pos_ - start)) + "'");
    g.index = static_cast<int>(parse_int());
    last_generator_pos_ = start;
    return g;
  }

  std::size_t last_generator_pos() const { return last_generator_pos_; }

  /// rational := int ['/' int]
  mpq_class parse_rational() {
    const std::size_t start = pos_;
    mpq_class num(parse_int());
    if (accept('/')) {
      const long den = parse_int();
      if (den == 0) fail_at(ErrorKind::SyntaxError, "zero denominator", start);
      num /= den;
    }
    return num;
  }

  /// A coefficient: `a`, `a/b`, `i`, `a/b i`, `2i`, or a parenthesized sum of such atoms.
  GaussianRational parse_coefficient() {
    skip_ws();
    if (accept('(')) {
      GaussianRational sum;
      bool first = true;
      while (true) {
        int sign = 1;
        if (accept('-')) {
          sign = -1;
        } else if (accept('+')) {
        } else if (!first) {
          break;
        }
        GaussianRational atom = parse_atom();
        if (sign < 0) atom = -atom;
        sum += atom;
        first = false;
        if (peek() == ')') break;
      }
      expect(')');
      return sum;
    }
    return parse_atom();
  }

 private:
  bool accept_prefix(std::string_view w) {
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }

  GaussianRational parse_atom() {
    skip_ws();
    if (peek() == 'i') {
      ++pos_;
      return GaussianRational::i();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(ErrorKind::SyntaxError, "malformed coefficient");
    mpq_class q = parse_rational();
    const std::size_t save = pos_;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return GaussianRational(0, q);
    }
    pos_ = save;
    return GaussianRational(q);
  }

  std::string_view text_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
  std::size_t last_generator_pos_ = 0;
};

void add_term(ComplexModel::Terms& terms, std::pair<int, int> key, const GaussianRational& c) {
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

void parse_equation(StatementParser& sp, ComplexModel& model, std::vector<bool>& seen) {
  // "d phi<k> = ..."
  const std::size_t lhs_pos = sp.pos();
  auto lhs = sp.parse_generator();
  if (!lhs) sp.fail(ErrorKind::SyntaxError, "expected 'phi<k>' after 'd'");
  if (lhs->bar) sp.fail_at(ErrorKind::SyntaxError, "conjugate equations are implied; write d phi<k> only", lhs_pos);
  if (model.n == 0) sp.fail_at(ErrorKind::SyntaxError, "'n = <int>' must precede equations", lhs_pos);
  if (lhs->index < 1 || lhs->index > model.n)
    sp.fail_at(ErrorKind::UnknownGenerator, "phi" + std::to_string(lhs->index) + " with n = " + std::to_string(model.n),
               sp.last_generator_pos());
  const int k = lhs->index;
  if (seen[k - 1]) sp.fail_at(ErrorKind::DuplicateEquation, "second equation for d phi" + std::to_string(k), lhs_pos);
  seen[k - 1] = true;
  sp.expect('=');

  bool first = true;
  while (true) {
    int sign = 1;
    if (sp.accept('+')) {
    } else if (sp.accept('-')) {
      sign = -1;
    } else if (!first) {
      if (!sp.at_end()) sp.fail(ErrorKind::SyntaxError, "expected '+' or '-' between terms");
      break;
    }
    first = false;

    GaussianRational coeff(1);
    auto a = sp.parse_generator();
    if (!a) {
      coeff = sp.parse_coefficient();
      sp.expect('*');
      a = sp.parse_generator();
      if (!a) sp.fail(ErrorKind::SyntaxError, "expected generator");
    }
    const std::size_t a_pos = sp.last_generator_pos();
    sp.expect('^');
    auto b = sp.parse_generator();
    if (!b) sp.fail(ErrorKind::SyntaxError, "expected generator after '^'");
    const std::size_t b_pos = sp.last_generator_pos();
    if (a->index < 1 || a->index > model.n)
      sp.fail_at(ErrorKind::UnknownGenerator, "generator index " + std::to_string(a->index), a_pos);
    if (b->index < 1 || b->index > model.n)
      sp.fail_at(ErrorKind::UnknownGenerator, "generator index " + std::to_string(b->index), b_pos);
    if (a->bar && b->bar)
      sp.fail_at(ErrorKind::BidegreeViolation, "(0,2) term in d phi" + std::to_string(k) + " (non-integrable)", a_pos);
    if (sign < 0) coeff = -coeff;

    if (!a->bar && !b->bar) {
      if (a->index == b->index) continue;  // phi^i ^ phi^i = 0
      if (a->index < b->index) {
        add_term(model.d20[k - 1], {a->index, b->index}, coeff);
      } else {
        add_term(model.d20[k - 1], {b->index, a->index}, -coeff);
      }
    } else if (!a->bar) {
      add_term(model.d11[k - 1], {a->index, b->index}, coeff);
    } else {
      add_term(model.d11[k - 1], {b->index, a->index}, -coeff);
    }
  }
}

}  // namespace

ComplexModel parse_model(std::string_view text) {
  ComplexModel model;
  std::vector<bool> seen;
  bool have_n = false;

  int line_no = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t stmt_start = 0;
    while (stmt_start <= line.size()) {
      std::size_t stmt_end = line.find(';', stmt_start);
      if (stmt_end == std::string_view::npos) stmt_end = line.size();
      StatementParser sp(line.substr(stmt_start, stmt_end - stmt_start), line_no, static_cast<int>(stmt_start));
      if (!sp.at_end()) {
        if (sp.accept_word("name")) {
          sp.expect('=');
          std::string value(sp.rest());
          while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
          if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
          model.name = value;
        } else if (sp.accept_word("n")) {
          sp.expect('=');
          if (have_n) sp.fail(ErrorKind::SyntaxError, "n given twice");
          const long n = sp.parse_int();
          if (n < 1 || n > 6) sp.fail(ErrorKind::SyntaxError, "n must be in 1..6");
          if (!sp.at_end()) sp.fail(ErrorKind::SyntaxError, "trailing input after n");
          model.n = static_cast<int>(n);
          model.d20.assign(model.n, {});
          model.d11.assign(model.n, {});
          seen.assign(model.n, false);
          have_n = true;
        } else if (sp.accept_word("d")) {
          parse_equation(sp, model, seen);
        } else {
          sp.fail(ErrorKind::SyntaxError, "expected 'n =', 'name =' or 'd phi<k> ='");
        }
      }
      stmt_start = stmt_end + 1;
    }
    line_start = line_end + 1;
  }
  if (!have_n) throw Error(ErrorKind::SyntaxError, "missing 'n = <int>'", 1, 1);
  return model;
}

GaussianRational parse_coefficient(std::string_view text, int line, int column_offset) {
  StatementParser sp(text, line, column_offset);
  int sign = 1;
  if (sp.accept('-')) {
    sign = -1;
  } else {
    sp.accept('+');
  }
  GaussianRational c = sp.parse_coefficient();
  if (!sp.at_end()) sp.fail(ErrorKind::SyntaxError, "trailing input after coefficient");
  return sign < 0 ? -c : c;
}

ComplexModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InputError, "cannot open model file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

namespace {

bool negative_lead(const GaussianRational& c) {
  return (sgn(c.re()) < 0) || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
}

}  // namespace

std::string render_model(const ComplexModel& model) {
  std::ostringstream os;
  os << "n = " << model.n << "\n";
  if (!model.name.empty()) os << "name = " << model.name << "\n";
  for (int k = 1; k <= model.n; ++k) {
    std::vector<std::pair<std::string, GaussianRational>> terms;
    for (const auto& [ij, c] : model.d20[k - 1])
      terms.emplace_back("phi" + std::to_string(ij.first) + " ^ phi" + std::to_string(ij.second), c);
    for (const auto& [ij, c] : model.d11[k - 1])
      terms.emplace_back("phi" + std::to_string(ij.first) + " ^ phibar" + std::to_string(ij.second), c);
    if (terms.empty()) continue;
    os << "d phi" << k << " =";
    bool first = true;
    for (const auto& [mono, c] : terms) {
      GaussianRational shown = c;
      // parenthesized complex coefficients keep their own sign
      const bool simple = c.is_real() || sgn(c.re()) == 0;
      if (simple && negative_lead(c)) {
        os << (first ? " -" : " - ");
        shown = -c;
      } else {
        os << (first ? " " : " + ");
      }
      os << shown.to_string() << " * " << mono;
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace abch
