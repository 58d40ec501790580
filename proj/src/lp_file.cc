// Copyright 2026 The Hullkit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hullkit/lp_file.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "hullkit/error.h"

namespace hullkit {

namespace {

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string bound_text(double v) {
  if (v == kInfinity) return "+inf";
  if (v == -kInfinity) return "-inf";
  return number(v);
}

std::string lower_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class LineWriter {
 public:
  explicit LineWriter(std::ostringstream& out) : out_(out) {}
  void start(const std::string& head) {
    out_ << head;
    width_ = head.size();
  }
  void piece(const std::string& text) {
    if (width_ > 200) {
      out_ << "\n   ";
      width_ = 3;
    }
    out_ << ' ' << text;
    width_ += text.size() + 1;
  }
  void end() { out_ << '\n'; }

 private:
  std::ostringstream& out_;
  std::size_t width_ = 0;
};

void write_terms(LineWriter& w, const std::vector<Term>& terms,
                 const LinearModel& model) {
  bool first = true;
  for (const Term& t : terms) {
    const std::string& name = model.variable(t.var).name;
    if (std::signbit(t.coef)) {
      w.piece("- " + number(-t.coef) + " " + name);
    } else {
      w.piece((first ? "" : "+ ") + number(t.coef) + " " + name);
    }
    first = false;
  }
}

// ------------------------------------------------------------------ reader

enum class Tok { kNumber, kIdent, kColon, kPlus, kMinus, kLe, kGe, kEq };

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  int line = 0;
  int column = 0;
};

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinaries, kGenerals, kEnd };

std::optional<Section> section_header(const std::string& trimmed) {
  const std::string l = lower_case(trimmed);
  if (l == "minimize" || l == "minimum" || l == "min") return Section::kObjective;
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") {
    return Section::kConstraints;
  }
  if (l == "bounds" || l == "bound") return Section::kBounds;
  if (l == "binaries" || l == "binary" || l == "bin") return Section::kBinaries;
  if (l == "generals" || l == "general" || l == "gen") return Section::kGenerals;
  if (l == "end") return Section::kEnd;
  return std::nullopt;
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

void tokenize_line(std::string_view s, int line, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const int col = static_cast<int>(i) + 1;
    if (c == '\\') return;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto res = std::from_chars(s.data() + i, s.data() + s.size(), v,
                                       std::chars_format::general);
      if (res.ec != std::errc()) throw ParseError(line, col, "malformed number");
      const std::size_t len = res.ptr - (s.data() + i);
      out.push_back({Tok::kNumber, std::string(s.substr(i, len)), v, line, col});
      i += len;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), 0.0, line, col});
      i = j;
      continue;
    }
    auto next_is = [&](char d) { return i + 1 < s.size() && s[i + 1] == d; };
    switch (c) {
      case ':': out.push_back({Tok::kColon, ":", 0.0, line, col}); ++i; break;
      case '+': out.push_back({Tok::kPlus, "+", 0.0, line, col}); ++i; break;
      case '-': out.push_back({Tok::kMinus, "-", 0.0, line, col}); ++i; break;
      case '<':
        out.push_back({Tok::kLe, "<=", 0.0, line, col});
        i += next_is('=') ? 2 : 1;
        break;
      case '>':
        out.push_back({Tok::kGe, ">=", 0.0, line, col});
        i += next_is('=') ? 2 : 1;
        break;
      case '=':
        if (next_is('<')) {
          out.push_back({Tok::kLe, "<=", 0.0, line, col});
          i += 2;
        } else if (next_is('>')) {
          out.push_back({Tok::kGe, ">=", 0.0, line, col});
          i += 2;
        } else {
          out.push_back({Tok::kEq, "=", 0.0, line, col});
          ++i;
        }
        break;
      default:
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
  }
}

bool is_relation(const Token& t) {
  return t.kind == Tok::kLe || t.kind == Tok::kGe || t.kind == Tok::kEq;
}

bool is_infinity_word(const Token& t) {
  if (t.kind != Tok::kIdent) return false;
  const std::string l = lower_case(t.text);
  return l == "inf" || l == "infinity";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, int end_line)
      : tokens_(std::move(tokens)), end_line_(end_line) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek(std::size_t ahead = 0) const {
    if (pos_ + ahead >= tokens_.size()) {
      throw ParseError(end_line_, 1, "unexpected end of section");
    }
    return tokens_[pos_ + ahead];
  }
  bool has(std::size_t ahead) const { return pos_ + ahead < tokens_.size(); }
  const Token& take() {
    const Token& t = peek();
    ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg + " near '" + t.text + "'");
  }

  std::optional<std::string> label() {
    if (has(1) && peek().kind == Tok::kIdent && peek(1).kind == Tok::kColon) {
      std::string name = take().text;
      take();
      return name;
    }
    return std::nullopt;
  }

  // Signed value: [+|-]* (number | inf).
  double value() {
    double sign = 1.0;
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      if (take().kind == Tok::kMinus) sign = -sign;
    }
    const Token& t = take();
    if (t.kind == Tok::kNumber) return sign * t.value;
    if (is_infinity_word(t)) return sign * kInfinity;
    fail(t, "expected a number");
  }

  struct Expression {
    std::vector<std::pair<const Token*, double>> terms;
    double constant = 0.0;
  };

  // Reads terms until a relation token or the end of the section.
  Expression expression() {
    Expression e;
    bool first = true;
    while (!done() && !is_relation(peek())) {
      double sign = 1.0;
      bool signed_term = false;
      while (!done() && (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus)) {
        if (take().kind == Tok::kMinus) sign = -sign;
        signed_term = true;
      }
      if (!first && !signed_term) fail(peek(), "expected '+' or '-'");
      const Token& t = take();
      if (t.kind == Tok::kNumber) {
        if (!done() && peek().kind == Tok::kIdent && !(has(1) && peek(1).kind == Tok::kColon)) {
          e.terms.emplace_back(&take(), sign * t.value);
        } else {
          e.constant += sign * t.value;
        }
      } else if (t.kind == Tok::kIdent) {
        e.terms.emplace_back(&t, sign);
      } else {
        fail(t, "expected a term");
      }
      first = false;
    }
    return e;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int end_line_;
};

class Reader {
 public:
  LinearModel run(std::string_view text) {
    std::vector<Token> tokens[7];
    Section current = Section::kNone;
    bool seen[7] = {};
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t stop = text.find('\n', start);
      if (stop == std::string_view::npos) stop = text.size();
      std::string_view line = text.substr(start, stop - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      start = stop + 1;

      std::size_t a = line.find_first_not_of(" \t");
      std::string trimmed;
      if (a != std::string_view::npos) {
        std::size_t b = line.find_last_not_of(" \t");
        trimmed = std::string(line.substr(a, b - a + 1));
      }
      if (trimmed.empty() || trimmed.front() == '\\') continue;
      if (current == Section::kEnd) {
        throw ParseError(line_no, static_cast<int>(a) + 1, "text after End");
      }
      const std::string l = lower_case(trimmed);
      if (l == "maximize" || l == "maximum" || l == "max") {
        throw ParseError(line_no, static_cast<int>(a) + 1, "only minimization is supported");
      }
      if (auto s = section_header(trimmed)) {
        const int si = static_cast<int>(*s);
        if (seen[si]) throw ParseError(line_no, static_cast<int>(a) + 1, "repeated section");
        if (*s != Section::kObjective && !seen[static_cast<int>(Section::kObjective)]) {
          throw ParseError(line_no, static_cast<int>(a) + 1, "objective section must come first");
        }
        seen[si] = true;
        current = *s;
        continue;
      }
      if (current == Section::kNone) {
        throw ParseError(line_no, static_cast<int>(a) + 1, "expected 'Minimize'");
      }
      tokenize_line(line, line_no, tokens[static_cast<int>(current)]);
    }
    if (!seen[static_cast<int>(Section::kObjective)]) {
      throw ParseError(line_no, 1, "missing 'Minimize' section");
    }
    if (current != Section::kEnd) throw ParseError(line_no, 1, "missing 'End'");

    auto section = [&](Section s) {
      return Parser(std::move(tokens[static_cast<int>(s)]), line_no);
    };
    Parser obj = section(Section::kObjective);
    read_objective(obj);
    Parser rows = section(Section::kConstraints);
    read_constraints(rows);
    Parser bounds = section(Section::kBounds);
    read_bounds(bounds);
    Parser bin = section(Section::kBinaries);
    read_integers(bin, true);
    Parser gen = section(Section::kGenerals);
    read_integers(gen, false);
    return std::move(model_);
  }

 private:
  int variable(const Token& t) {
    if (auto j = model_.find_variable(t.text)) return *j;
    if (!is_valid_name(t.text)) throw ParseError(t.line, t.column, "invalid name '" + t.text + "'");
    return model_.add_variable(t.text, 0.0, kInfinity);
  }

  void read_objective(Parser& p) {
    p.label();
    Parser::Expression e = p.expression();
    if (!p.done()) p.fail(p.peek(), "relation in objective");
    for (const auto& [tok, coef] : e.terms) {
      const int j = variable(*tok);
      model_.set_objective(j, model_.objective()[j] + coef);
    }
    model_.set_objective_constant(e.constant);
  }

  void read_constraints(Parser& p) {
    while (!p.done()) {
      const Token& head = p.peek();
      std::optional<std::string> name = p.label();
      Parser::Expression e = p.expression();
      if (p.done()) throw ParseError(head.line, head.column, "row without relation");
      const Token& rel = p.take();
      if (!is_relation(rel)) p.fail(rel, "expected a relation");
      const Token& rhs_tok = p.peek();
      const double rhs = p.value();
      if (!std::isfinite(rhs)) p.fail(rhs_tok, "infinite right-hand side");
      std::vector<Term> terms;
      for (const auto& [tok, coef] : e.terms) terms.push_back({variable(*tok), coef});
      const Relation r = rel.kind == Tok::kLe   ? Relation::kLessEqual
                         : rel.kind == Tok::kGe ? Relation::kGreaterEqual
                                                : Relation::kEqual;
      const std::string row_name =
          name ? *name : "R" + std::to_string(model_.num_constraints() + 1);
      try {
        model_.add_constraint(row_name, std::move(terms), r, rhs - e.constant);
      } catch (const Error& err) {
        throw ParseError(head.line, head.column, err.what());
      }
    }
  }

  void apply(const Token& at, int j, Tok rel, double v, bool var_on_left) {
    const Variable& var = model_.variable(j);
    double lo = var.lower;
    double up = var.upper;
    Tok r = rel;
    if (!var_on_left && r != Tok::kEq) r = r == Tok::kLe ? Tok::kGe : Tok::kLe;
    if (r == Tok::kLe) up = v;
    if (r == Tok::kGe) lo = v;
    if (r == Tok::kEq) lo = up = v;
    try {
      model_.set_bounds(j, lo, up);
    } catch (const Error& err) {
      throw ParseError(at.line, at.column, err.what());
    }
  }

  void read_bounds(Parser& p) {
    while (!p.done()) {
      const Token& head = p.peek();
      if (head.kind == Tok::kIdent && !is_infinity_word(head)) {
        const int j = variable(p.take());
        if (!p.done() && p.peek().kind == Tok::kIdent && lower_case(p.peek().text) == "free") {
          p.take();
          model_.set_bounds(j, -kInfinity, kInfinity);
          continue;
        }
        const Token& rel = p.take();
        if (!is_relation(rel)) p.fail(rel, "expected a relation");
        apply(head, j, rel.kind, p.value(), true);
        continue;
      }
      const double v = p.value();
      const Token& rel = p.take();
      if (!is_relation(rel)) p.fail(rel, "expected a relation");
      const Token& name = p.take();
      if (name.kind != Tok::kIdent) p.fail(name, "expected a variable");
      const int j = variable(name);
      apply(head, j, rel.kind, v, false);
      if (!p.done() && is_relation(p.peek())) {
        const Token& rel2 = p.take();
        apply(head, j, rel2.kind, p.value(), true);
      }
    }
  }

  void read_integers(Parser& p, bool binary) {
    while (!p.done()) {
      const Token& t = p.take();
      if (t.kind != Tok::kIdent) p.fail(t, "expected a variable");
      const int j = variable(t);
      model_.set_integer(j, true);
      if (binary) model_.set_bounds(j, 0.0, 1.0);
    }
  }

  LinearModel model_;
};

}  // namespace

std::string format_lp(const LinearModel& model) {
  std::ostringstream out;
  LineWriter w(out);
  out << "\\ hullkit LP model\n";
  out << "Minimize\n";
  w.start(" obj:");
  std::vector<Term> obj;
  for (int j = 0; j < model.num_variables(); ++j) obj.push_back({j, model.objective()[j]});
  write_terms(w, obj, model);
  const double c = model.objective_constant();
  if (c != 0.0 || obj.empty()) {
    if (std::signbit(c)) {
      w.piece("- " + number(-c));
    } else {
      w.piece((obj.empty() ? "" : "+ ") + number(c));
    }
  }
  w.end();

  out << "Subject To\n";
  for (const Constraint& row : model.constraints()) {
    w.start(" " + row.name + ":");
    if (row.terms.empty()) w.piece("0");
    write_terms(w, row.terms, model);
    const char* rel = row.relation == Relation::kLessEqual      ? "<="
                      : row.relation == Relation::kGreaterEqual ? ">="
                                                                : "=";
    w.piece(std::string(rel) + " " + number(row.rhs));
    w.end();
  }

  out << "Bounds\n";
  std::vector<const Variable*> binaries;
  std::vector<const Variable*> generals;
  for (const Variable& v : model.variables()) {
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out << " " << v.name << " free\n";
    } else {
      out << " " << bound_text(v.lower) << " <= " << v.name << " <= "
          << bound_text(v.upper) << "\n";
    }
    if (v.integer) {
      (v.lower == 0.0 && v.upper == 1.0 ? binaries : generals).push_back(&v);
    }
  }
  for (auto [title, list] : {std::pair{"Binaries", &binaries}, {"Generals", &generals}}) {
    if (list->empty()) continue;
    out << title << "\n";
    w.start("");
    for (const Variable* v : *list) w.piece(v->name);
    w.end();
  }
  out << "End\n";
  return out.str();
}

LinearModel parse_lp(std::string_view text) { return Reader().run(text); }

void write_lp_file(const LinearModel& model, const std::filesystem::path& path) {
  const std::string text = format_lp(model);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  f << text;
  f.close();
  if (!f) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

LinearModel read_lp_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_lp(buf.str());
}

}  // namespace hullkit
