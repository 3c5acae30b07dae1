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

#include <sstream>
#include <string>
#include <vector>

#include "ppres/parser.hpp"

namespace ppres {
namespace {

// One signed summand: coefficient (sign included) and optional variable.
struct Summand {
  Polynomial coeff;
  const VarId* var = nullptr;
};

bool is_negative(const Polynomial& p) { return !p.is_zero() && p.leading() < 0; }

std::vector<Summand> summands(const LinearTerm& term) {
  std::vector<Summand> out;
  for (const auto& [v, c] : term.coeffs()) out.push_back({c, &v});
  // Constants are split per monomial so each lands on its natural side.
  const auto& cs = term.constant().coeffs();
  for (std::size_t i = cs.size(); i-- > 0;) {
    if (cs[i] != 0) out.push_back({Polynomial::Monomial(cs[i], i), nullptr});
  }
  return out;
}

// Magnitude of a summand whose coefficient is sign-normalized to positive.
std::string magnitude(const Polynomial& c, const VarId* var) {
  if (!var) return c.to_string();
  if (c.is_one()) return var->display();
  if (c.is_constant()) return c.to_string() + "*" + var->display();
  // A single monomial like 2t needs no parentheses.
  bool monomial = true;
  for (std::size_t i = 0; i + 1 < c.coeffs().size(); ++i) {
    if (c.coeffs()[i] != 0) monomial = false;
  }
  if (monomial) return c.to_string() + "*" + var->display();
  return "(" + c.to_string() + ")*" + var->display();
}

std::string join_sum(const std::vector<Summand>& parts) {
  if (parts.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& s : parts) {
    const bool neg = is_negative(s.coeff);
    std::string mag = magnitude(neg ? -s.coeff : s.coeff, s.var);
    if (first) {
      out += neg ? "-" + mag : mag;
    } else {
      out += (neg ? " - " : " + ") + mag;
    }
    first = false;
  }
  return out;
}

// Splits `term op 0` into readable `lhs op rhs`.
std::string comparison(const LinearTerm& term, const char* op) {
  std::vector<Summand> lhs, rhs;
  for (auto& s : summands(term)) {
    if (is_negative(s.coeff)) {
      rhs.push_back({-s.coeff, s.var});
    } else {
      lhs.push_back(s);
    }
  }
  return join_sum(lhs) + " " + op + " " + join_sum(rhs);
}

enum Prec { kOrPrec = 1, kAndPrec = 2, kUnaryPrec = 3 };

void emit(const Formula& f, int context, std::string& out);

void emit_child(const Formula& f, int prec, std::string& out) {
  // Quantifier bodies reach maximally right, so they are parenthesized
  // whenever they sit inside a connective.
  if (f.is_quantifier()) {
    out += "(";
    emit(f, 0, out);
    out += ")";
    return;
  }
  emit(f, prec, out);
}

void emit(const Formula& f, int context, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::kTrue:
      out += "0 = 0";
      return;
    case FormulaKind::kFalse:
      out += "0 != 0";
      return;
    case FormulaKind::kLt:
      out += comparison(f.term(), "<");
      return;
    case FormulaKind::kEq:
      out += comparison(f.term(), "=");
      return;
    case FormulaKind::kDiv:
      out += "D[" + f.modulus().to_string() + "](" + join_sum(summands(f.term())) + ")";
      return;
    case FormulaKind::kNot: {
      const Formula& c = f.child();
      if (c.kind() == FormulaKind::kEq) {
        out += comparison(c.term(), "!=");
      } else if (c.kind() == FormulaKind::kLt) {
        out += comparison(c.term(), ">=");
      } else if (c.is_atom()) {
        out += "~";
        emit(c, kUnaryPrec, out);
      } else {
        out += "~(";
        emit(c, 0, out);
        out += ")";
      }
      return;
    }
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      const bool is_and = f.kind() == FormulaKind::kAnd;
      const int prec = is_and ? kAndPrec : kOrPrec;
      if (f.children().empty()) {
        out += is_and ? "0 = 0" : "0 != 0";
        return;
      }
      const bool paren = context > prec && f.children().size() > 1;
      if (paren) out += "(";
      bool first = true;
      for (const auto& k : f.children()) {
        if (!first) out += is_and ? " /\\ " : " \\/ ";
        first = false;
        emit_child(k, f.children().size() > 1 ? prec + 1 : context, out);
      }
      if (paren) out += ")";
      return;
    }
    case FormulaKind::kExists:
    case FormulaKind::kForall:
      out += f.kind() == FormulaKind::kExists ? "E " : "A ";
      out += f.var().display() + ". ";
      emit(f.child(), 0, out);
      return;
    case FormulaKind::kBExists:
    case FormulaKind::kBForall:
      out += f.kind() == FormulaKind::kBExists ? "Eb " : "Ab ";
      out += f.var().display() + " <= " + f.bound().to_string() + ". ";
      emit(f.child(), 0, out);
      return;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  emit(f, 0, out);
  return out;
}

std::string print_term(const LinearTerm& term) { return join_sum(summands(term)); }

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print(f); }
std::ostream& operator<<(std::ostream& os, const LinearTerm& term) { return os << print_term(term); }

}  // namespace ppres
