//
// Copyright 2026 The ppres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "ppres/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "ppres/error.hpp"

namespace ppres {
namespace {

enum class Tok {
  kInt,
  kIdent,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kDot,
  kPlus,
  kMinus,
  kStar,
  kCaret,
  kLt,
  kLe,
  kEq,
  kNe,
  kGt,
  kGe,
  kAnd,
  kOr,
  kNot,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& tok) {
  if (tok.kind == Tok::kEnd) return "end of input";
  return "'" + tok.text + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::kInt, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '\'')) {
        ++j;
      }
      out.push_back({Tok::kIdent, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym kSyms[] = {
        {"/\\", Tok::kAnd}, {"\\/", Tok::kOr}, {"<=", Tok::kLe}, {">=", Tok::kGe},
        {"!=", Tok::kNe},   {"(", Tok::kLParen}, {")", Tok::kRParen},
        {"[", Tok::kLBracket}, {"]", Tok::kRBracket}, {".", Tok::kDot},
        {"+", Tok::kPlus},  {"-", Tok::kMinus}, {"*", Tok::kStar},
        {"^", Tok::kCaret}, {"<", Tok::kLt},    {"=", Tok::kEq},
        {">", Tok::kGt},    {"~", Tok::kNot},
    };
    bool matched = false;
    for (const auto& sym : kSyms) {
      if ((sym.text.size() == 2 && two == sym.text) ||
          (sym.text.size() == 1 && c == sym.text[0])) {
        out.push_back({sym.kind, std::string(sym.text), l, cl});
        advance(sym.text.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "E" || s == "A" || s == "Eb" || s == "Ab" || s == "D" || s == "t";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula formula() { return disjunction(); }

  LinearTerm term() {
    LinearTerm acc;
    if (peek().kind == Tok::kMinus) {
      next();
      acc = -product();
    } else {
      if (peek().kind == Tok::kPlus) next();
      acc = product();
    }
    for (;;) {
      if (peek().kind == Tok::kPlus) {
        next();
        acc += product();
      } else if (peek().kind == Tok::kMinus) {
        next();
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Polynomial constant_term() {
    const Token& start = peek();
    LinearTerm t = term();
    if (!t.is_constant()) fail_at(start, "expected a polynomial in t");
    return t.constant();
  }

  void expect_end() {
    if (peek().kind != Tok::kEnd) fail_at(peek(), "unexpected " + describe(peek()));
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail_at(const Token& tok, const std::string& msg) {
    throw ParseError(msg, tok.line, tok.column);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail_at(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    }
    return next();
  }

  Formula disjunction() {
    std::vector<Formula> kids{conjunction()};
    while (peek().kind == Tok::kOr) {
      next();
      kids.push_back(conjunction());
    }
    return kids.size() == 1 ? kids[0] : Formula::Or(std::move(kids));
  }

  Formula conjunction() {
    std::vector<Formula> kids{unary()};
    while (peek().kind == Tok::kAnd) {
      next();
      kids.push_back(unary());
    }
    return kids.size() == 1 ? kids[0] : Formula::And(std::move(kids));
  }

  Formula unary() {
    const Token& tok = peek();
    if (tok.kind == Tok::kNot) {
      next();
      return Formula::Not(unary());
    }
    if (tok.kind == Tok::kIdent && (tok.text == "E" || tok.text == "A")) {
      next();
      VarId v = variable();
      expect(Tok::kDot, "'.'");
      Formula body = formula();
      return tok.text == "E" ? Formula::Exists(v, body) : Formula::Forall(v, body);
    }
    if (tok.kind == Tok::kIdent && (tok.text == "Eb" || tok.text == "Ab")) {
      next();
      VarId v = variable();
      expect(Tok::kLe, "'<='");
      Polynomial bound = constant_term();
      expect(Tok::kDot, "'.'");
      Formula body = formula();
      return tok.text == "Eb" ? Formula::BExists(v, bound, body)
                              : Formula::BForall(v, bound, body);
    }
    return primary();
  }

  Formula primary() {
    if (peek().kind == Tok::kLParen) {
      // Either a parenthesized formula or a term that opens with '('.
      const std::size_t saved = pos_;
      try {
        next();
        Formula f = formula();
        expect(Tok::kRParen, "')'");
        if (!continues_term(peek().kind)) return f;
      } catch (const ParseError& e) {
        remember(e);
      }
      pos_ = saved;
      try {
        return atom();
      } catch (const ParseError& e) {
        remember(e);
        throw furthest_;
      }
    }
    return atom();
  }

  static bool continues_term(Tok k) {
    switch (k) {
      case Tok::kPlus:
      case Tok::kMinus:
      case Tok::kStar:
      case Tok::kLt:
      case Tok::kLe:
      case Tok::kEq:
      case Tok::kNe:
      case Tok::kGt:
      case Tok::kGe:
      case Tok::kInt:
      case Tok::kIdent:
      case Tok::kLParen:
        return true;
      default:
        return false;
    }
  }

  void remember(const ParseError& e) {
    if (!have_furthest_ || e.line() > furthest_.line() ||
        (e.line() == furthest_.line() && e.column() > furthest_.column())) {
      furthest_ = e;
      have_furthest_ = true;
    }
  }

  Formula atom() {
    const Token& tok = peek();
    if (tok.kind == Tok::kIdent && tok.text == "D") {
      next();
      expect(Tok::kLBracket, "'['");
      Polynomial modulus = constant_term();
      expect(Tok::kRBracket, "']'");
      expect(Tok::kLParen, "'('");
      LinearTerm arg = term();
      expect(Tok::kRParen, "')'");
      return Formula::Div(std::move(modulus), std::move(arg));
    }
    LinearTerm lhs = term();
    std::vector<Formula> chain;
    while (is_relop(peek().kind)) {
      Tok op = next().kind;
      LinearTerm rhs = term();
      chain.push_back(comparison(op, lhs, rhs));
      lhs = std::move(rhs);
    }
    if (chain.empty()) {
      fail_at(peek(), "expected a comparison operator, found " + describe(peek()));
    }
    return chain.size() == 1 ? chain[0] : Formula::And(std::move(chain));
  }

  static bool is_relop(Tok k) {
    return k == Tok::kLt || k == Tok::kLe || k == Tok::kEq || k == Tok::kNe ||
           k == Tok::kGt || k == Tok::kGe;
  }

  static Formula comparison(Tok op, const LinearTerm& l, const LinearTerm& r) {
    switch (op) {
      case Tok::kLt:
        return Formula::Lt(l, r);
      case Tok::kLe:
        return Formula::Le(l, r);
      case Tok::kEq:
        return Formula::Eq(l, r);
      case Tok::kNe:
        return Formula::Ne(l, r);
      case Tok::kGt:
        return Formula::Gt(l, r);
      default:
        return Formula::Ge(l, r);
    }
  }

  VarId variable() {
    const Token& tok = peek();
    if (tok.kind != Tok::kIdent || is_keyword(tok.text)) {
      fail_at(tok, "expected a variable name, found " + describe(tok));
    }
    next();
    return VarId{tok.text, 0};
  }

  static bool starts_factor(const Token& tok) {
    if (tok.kind == Tok::kInt || tok.kind == Tok::kLParen) return true;
    return tok.kind == Tok::kIdent &&
           (tok.text == "t" || !is_keyword(tok.text));
  }

  LinearTerm product() {
    LinearTerm acc = factor();
    for (;;) {
      const Token& tok = peek();
      if (tok.kind == Tok::kStar) {
        next();
      } else if (!starts_factor(tok)) {
        return acc;
      }
      const Token& at = peek();
      LinearTerm rhs = factor();
      if (acc.is_constant()) {
        acc = rhs * acc.constant();
      } else if (rhs.is_constant()) {
        acc *= rhs.constant();
      } else {
        fail_at(at, "nonlinear term: product of two variables");
      }
    }
  }

  LinearTerm factor() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::kInt: {
        next();
        return LinearTerm(Polynomial(BigInt(tok.text)));
      }
      case Tok::kLParen: {
        next();
        LinearTerm inner = term();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kMinus: {
        next();
        return -factor();
      }
      case Tok::kIdent: {
        if (tok.text == "t") {
          next();
          std::size_t degree = 1;
          if (peek().kind == Tok::kCaret) {
            next();
            const Token& e = expect(Tok::kInt, "an exponent");
            degree = std::stoul(e.text);
          }
          return LinearTerm(Polynomial::Monomial(1, degree));
        }
        return LinearTerm::Var(variable());
      }
      default:
        fail_at(tok, "expected a term, found " + describe(tok));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseError furthest_{"", 0, 0};
  bool have_furthest_ = false;
};

void check_declared(const Formula& f, const ParseOptions& options) {
  if (!options.declared_free) return;
  for (const auto& v : free_vars(f)) {
    if (!options.declared_free->contains(v.display())) {
      throw ParseError("unknown variable '" + v.display() + "'", 1, 1);
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  Parser p(lex(text));
  Formula f = p.formula();
  p.expect_end();
  check_declared(f, options);
  return f;
}

LinearTerm parse_term(std::string_view text) {
  Parser p(lex(text));
  LinearTerm t = p.term();
  p.expect_end();
  return t;
}

Polynomial parse_polynomial(std::string_view text) {
  Parser p(lex(text));
  Polynomial poly = p.constant_term();
  p.expect_end();
  return poly;
}

SourceFormula load_source(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  SourceFormula src{buf.str(), path, Formula::True()};
  try {
    src.formula = parse_formula(src.text, options);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.column(), path);
  }
  return src;
}

SourceFormula inline_source(std::string text, const ParseOptions& options) {
  SourceFormula src{std::move(text), "<inline>", Formula::True()};
  src.formula = parse_formula(src.text, options);
  return src;
}

}  // namespace ppres
