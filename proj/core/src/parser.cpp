#include "strel/parser.hpp"

#include "strel/interval.hpp"

#include <cctype>
#include <functional>

namespace strel {

namespace {

std::string join_expected(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      out += i + 1 == xs.size() ? " or " : ", ";
    }
    out += xs[i];
  }
  return out;
}

std::string make_message(std::size_t line, std::size_t column,
                         const std::vector<std::string>& expected, const std::string& found,
                         const std::string& detail) {
  std::string msg = "parse error at line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": ";
  if (!detail.empty()) {
    msg += detail;
  } else {
    msg += "expected " + join_expected(expected) + " but found " + found;
  }
  return msg;
}

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_digit = [&](std::size_t k) {
    return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]));
  };
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    Token t{Tok::Symbol, {}, line, col};
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
        ++j;
      }
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
    } else if (ch == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      t.text = "->";
    } else if ((ch == '<' || ch == '>') && i + 1 < s.size() && s[i + 1] == '=') {
      t.text = std::string(s.substr(i, 2));
    } else if (is_digit(i) || ((ch == '-' || ch == '+' || ch == '.') &&
                               (is_digit(i + 1) || (s.size() > i + 2 && s[i + 1] == '.' &&
                                                    is_digit(i + 2))))) {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) {
        ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) {
          ++k;
        }
        if (is_digit(k)) {
          j = k;
          while (is_digit(j)) {
            ++j;
          }
        }
      }
      t.kind = Tok::Number;
      t.text = std::string(s.substr(i, j - i));
    } else if (std::string_view("()[],!&|<>").find(ch) != std::string_view::npos) {
      t.text = std::string(1, ch);
    } else {
      throw ParseError(line, col, {"a formula token"}, "'" + std::string(1, ch) + "'");
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, {}, line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "true" || s == "false" || s == "F" || s == "G" || s == "U" || s == "reach" ||
         s == "escape" || s == "somewhere" || s == "everywhere";
}

class Parser {
public:
  Parser(std::vector<Token> toks, const VariableTable& vars) : toks_(std::move(toks)), vars_(vars) {}

  Formula parse() {
    Formula f = until_expr();
    if (peek().kind != Tok::End) {
      fail({"'U'", "'->'", "'|'", "'&'", "end of input"});
    }
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_symbol(std::string_view s) const {
    return peek().kind == Tok::Symbol && peek().text == s;
  }
  bool at_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

  static std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Number: return "number " + t.text;
    case Tok::Ident: return is_keyword(t.text) ? "'" + t.text + "'" : "identifier '" + t.text + "'";
    case Tok::Symbol: return "'" + t.text + "'";
    }
    return {};
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().line, peek().column, std::move(expected), describe(peek()));
  }

  [[noreturn]] static void fail_at(const Token& t, const std::string& detail) {
    throw ParseError(t.line, t.column, {}, describe(t), detail);
  }

  void expect(std::string_view sym) {
    if (!at_symbol(sym)) {
      fail({"'" + std::string(sym) + "'"});
    }
    ++pos_;
  }

  double number() {
    if (peek().kind != Tok::Number) {
      fail({"a number"});
    }
    const Token& t = toks_[pos_++];
    try {
      return parse_real(t.text);
    } catch (const std::invalid_argument&) {
      fail_at(t, "malformed number '" + t.text + "'");
    }
  }

  // Wraps factory validation errors with the position of the operator token.
  template <class Fn>
  Formula build(const Token& at, Fn&& fn) {
    try {
      return fn();
    } catch (const std::invalid_argument& e) {
      fail_at(at, e.what());
    }
  }

  Formula until_expr() {
    Formula lhs = implies_expr();
    if (!at_ident("U")) {
      return lhs;
    }
    const Token op = toks_[pos_++];
    if (at_symbol("[")) {
      ++pos_;
      const double a = number();
      expect(",");
      const double b = number();
      expect("]");
      Formula rhs = until_expr();
      return build(op, [&] { return Formula::until(a, b, lhs, rhs); });
    }
    Formula rhs = until_expr();
    return Formula::unbounded_until(lhs, rhs);
  }

  Formula implies_expr() {
    Formula lhs = or_expr();
    if (!at_symbol("->")) {
      return lhs;
    }
    ++pos_;
    return Formula::implies(lhs, implies_expr());
  }

  Formula or_expr() {
    Formula lhs = and_expr();
    while (at_symbol("|")) {
      ++pos_;
      lhs = Formula::disjunction(lhs, and_expr());
    }
    return lhs;
  }

  Formula and_expr() {
    Formula lhs = unary();
    while (at_symbol("&")) {
      ++pos_;
      lhs = Formula::conjunction(lhs, unary());
    }
    return lhs;
  }

  double spatial_bound(std::string_view cmp) {
    expect("[");
    expect(cmp);
    const double d = number();
    expect("]");
    return d;
  }

  Formula unary() {
    const Token op = peek();
    if (at_symbol("!")) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (at_ident("F") || at_ident("G")) {
      ++pos_;
      expect("[");
      const double a = number();
      expect(",");
      const double b = number();
      expect("]");
      Formula body = unary();
      return build(op, [&] {
        return op.text == "F" ? Formula::eventually(a, b, body) : Formula::globally(a, b, body);
      });
    }
    if (at_ident("somewhere") || at_ident("everywhere")) {
      ++pos_;
      const double d = spatial_bound("<=");
      Formula body = unary();
      return build(op, [&] {
        return op.text == "somewhere" ? Formula::somewhere(d, body)
                                      : Formula::everywhere(d, body);
      });
    }
    if (at_ident("escape")) {
      ++pos_;
      const double d = spatial_bound(">=");
      Formula body = unary();
      return build(op, [&] { return Formula::escape(d, body); });
    }
    return primary();
  }

  Formula primary() {
    const Token t = peek();
    if (at_symbol("(")) {
      ++pos_;
      Formula f = until_expr();
      expect(")");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true") {
        ++pos_;
        return Formula::top();
      }
      if (t.text == "false") {
        ++pos_;
        return Formula::bottom();
      }
      if (t.text == "reach") {
        ++pos_;
        const double d = spatial_bound("<=");
        expect("(");
        Formula l = until_expr();
        expect(",");
        Formula r = until_expr();
        expect(")");
        return build(t, [&] { return Formula::reach(d, l, r); });
      }
      if (!is_keyword(t.text)) {
        const auto dim = vars_.find(t.text);
        if (!dim) {
          fail_at(t, "unknown variable '" + t.text + "'");
        }
        ++pos_;
        Cmp cmp;
        if (at_symbol("<")) {
          cmp = Cmp::Less;
        } else if (at_symbol(">")) {
          cmp = Cmp::Greater;
        } else {
          fail({"'<'", "'>'"});
        }
        ++pos_;
        const Token& ct = peek();
        const double c = number();
        return build(ct, [&] { return Formula::atom(*dim, cmp, c, t.text); });
      }
    }
    fail({"'('", "'!'", "'true'", "'false'", "a variable", "'F'", "'G'", "'reach'", "'escape'",
          "'somewhere'", "'everywhere'"});
  }

  std::vector<Token> toks_;
  const VariableTable& vars_;
  std::size_t pos_ = 0;
};

} // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       std::string found, std::string detail)
    : std::runtime_error(make_message(line, column, expected, found, detail)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Formula parse_formula(std::string_view text, const VariableTable& vars) {
  return Parser(tokenize(text), vars).parse();
}

} // namespace strel
