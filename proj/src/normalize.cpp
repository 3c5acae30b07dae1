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

#include "ppres/normalize.hpp"

#include <utility>

#include "ppres/error.hpp"
#include "sign_patterns.hpp"

namespace ppres {
namespace {

bool leading_negative(const Polynomial& p) { return !p.is_zero() && p.leading() < 0; }

Formula negate_nnf(const Formula& f);

Formula nnf(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kNot:
      return negate_nnf(f.child());
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(nnf(k));
      return f.with_children(std::move(kids));
    }
    case FormulaKind::kExists:
    case FormulaKind::kForall:
    case FormulaKind::kBExists:
    case FormulaKind::kBForall:
      return f.with_children({nnf(f.child())});
    default:
      return f;
  }
}

// NNF of ~f.
Formula negate_nnf(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kTrue:
      return Formula::False();
    case FormulaKind::kFalse:
      return Formula::True();
    case FormulaKind::kLt:
      return Formula::LtZero(-f.term() - LinearTerm(1));
    case FormulaKind::kEq:
    case FormulaKind::kDiv:
      return Formula::Not(f);
    case FormulaKind::kNot:
      return nnf(f.child());
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(negate_nnf(k));
      return f.kind() == FormulaKind::kAnd ? Formula::Or(std::move(kids))
                                           : Formula::And(std::move(kids));
    }
    case FormulaKind::kExists:
      return Formula::Forall(f.var(), negate_nnf(f.child()));
    case FormulaKind::kForall:
      return Formula::Exists(f.var(), negate_nnf(f.child()));
    case FormulaKind::kBExists:
      return Formula::BForall(f.var(), f.bound(), negate_nnf(f.child()));
    case FormulaKind::kBForall:
      return Formula::BExists(f.var(), f.bound(), negate_nnf(f.child()));
  }
  return f;
}

// Applies `fn` to every literal of an NNF formula.
template <typename Fn>
Formula map_literals(const Formula& f, Fn&& fn) {
  if (f.is_literal()) return fn(f);
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& k : f.children()) kids.push_back(map_literals(k, fn));
  return f.with_children(std::move(kids));
}

template <typename Fn>
void for_each_literal(const Formula& f, Fn&& fn) {
  if (f.is_literal()) {
    fn(f);
    return;
  }
  for (const auto& k : f.children()) for_each_literal(k, fn);
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f); }

ClassifiedLiteral classify_literal(const Formula& literal, const VarId& y) {
  const bool negated = literal.kind() == FormulaKind::kNot;
  const Formula& atom = negated ? literal.child() : literal;
  if (!atom.is_atom()) {
    throw NotNormalizedError("classify_literal: not a literal");
  }
  ClassifiedLiteral out;
  if (atom.kind() == FormulaKind::kTrue || atom.kind() == FormulaKind::kFalse ||
      !atom.term().mentions(y)) {
    return out;  // T7
  }
  Polynomial coeff = atom.term().coeff(y);
  LinearTerm rest = atom.term().without(y);
  switch (atom.kind()) {
    case FormulaKind::kLt: {
      // ~(s < 0) is -s - 1 < 0.
      if (negated) {
        coeff = -coeff;
        rest = -rest - LinearTerm(1);
      }
      if (leading_negative(coeff)) {
        out.cls = AtomClass::kT2;  // rest < -coeff*y
        out.coeff = -coeff;
        out.rest = std::move(rest);
      } else {
        out.cls = AtomClass::kT1;  // coeff*y < -rest
        out.coeff = std::move(coeff);
        out.rest = -rest;
      }
      return out;
    }
    case FormulaKind::kEq: {
      out.cls = negated ? AtomClass::kT6 : AtomClass::kT5;
      if (leading_negative(coeff)) {
        out.coeff = -coeff;
        out.rest = std::move(rest);
      } else {
        out.coeff = std::move(coeff);
        out.rest = -rest;
      }
      return out;
    }
    case FormulaKind::kDiv: {
      out.cls = negated ? AtomClass::kT4 : AtomClass::kT3;
      out.modulus = atom.modulus();
      if (leading_negative(coeff)) {
        out.coeff = -coeff;
        out.rest = -rest;
      } else {
        out.coeff = std::move(coeff);
        out.rest = std::move(rest);
      }
      return out;
    }
    default:
      return out;
  }
}

Formula eliminate_equalities(const Formula& f, const VarId& y) {
  return map_literals(f, [&](const Formula& lit) -> Formula {
    const bool negated = lit.kind() == FormulaKind::kNot;
    const Formula& atom = negated ? lit.child() : lit;
    if (atom.kind() != FormulaKind::kEq || !atom.term().mentions(y)) return lit;
    const LinearTerm& s = atom.term();
    if (negated) {
      // s != 0  <=>  s < 0 \/ -s < 0
      return Formula::Or({Formula::LtZero(s), Formula::LtZero(-s)});
    }
    // s = 0  <=>  -1 < s /\ s < 1
    return Formula::And({Formula::LtZero(-s - LinearTerm(1)),
                         Formula::LtZero(s - LinearTerm(1))});
  });
}

std::vector<Polynomial> coefficient_set(const Formula& f, const VarId& y) {
  std::set<Polynomial> seen;
  for_each_literal(f, [&](const Formula& lit) {
    ClassifiedLiteral c = classify_literal(lit, y);
    switch (c.cls) {
      case AtomClass::kT1:
      case AtomClass::kT2:
      case AtomClass::kT3:
      case AtomClass::kT4:
        seen.insert(c.coeff);
        break;
      default:
        break;
    }
  });
  return {seen.begin(), seen.end()};
}

std::vector<SignCase> sign_cases(const std::vector<Polynomial>& coeffs) {
  using internal::SignClass;
  const std::vector<std::vector<SignClass>> options(coeffs.size(),
                                                    {SignClass::kZero, SignClass::kNonzero});
  std::vector<SignCase> out;
  for (auto& pattern : internal::sign_patterns(coeffs, options, true)) {
    SignCase sc;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (pattern.choice[i] == SignClass::kNonzero) sc.selected.push_back(coeffs[i]);
    }
    sc.nu = product(sc.selected);
    sc.guard = std::move(pattern.guard);
    out.push_back(std::move(sc));
  }
  return out;
}

namespace {

// Product of S' with one occurrence of `factor` removed.
Polynomial cofactor(const std::vector<Polynomial>& selected, const Polynomial& factor) {
  Polynomial acc(1);
  bool skipped = false;
  for (const auto& p : selected) {
    if (!skipped && p == factor) {
      skipped = true;
      continue;
    }
    acc *= p;
  }
  return acc;
}

bool contains(const std::vector<Polynomial>& v, const Polynomial& p) {
  for (const auto& q : v) {
    if (q == p) return true;
  }
  return false;
}

// [c > 0 /\ pos] \/ [c < 0 /\ neg], folded when c is constant.
Formula by_cofactor_sign(const Polynomial& c, Formula pos, Formula neg) {
  switch (constant_sign(c)) {
    case ConstantSign::kPositive:
      return pos;
    case ConstantSign::kNegative:
      return neg;
    default:
      return Formula::Or({Formula::And({Formula::LtZero(-c), std::move(pos)}),
                          Formula::And({Formula::LtZero(c), std::move(neg)})});
  }
}

Formula rewrite_literal(const Formula& lit, const VarId& y, const VarId& yp,
                        const SignCase& sc) {
  const ClassifiedLiteral c = classify_literal(lit, y);
  const LinearTerm ypt = LinearTerm::Var(yp);
  switch (c.cls) {
    case AtomClass::kT7:
      return lit;
    case AtomClass::kT1: {
      if (!contains(sc.selected, c.coeff)) return Formula::LtZero(-c.rest);  // 0 < a
      const Polynomial cof = cofactor(sc.selected, c.coeff);
      const LinearTerm scaled = c.rest * cof;
      return by_cofactor_sign(cof, Formula::LtZero(ypt - scaled),
                              Formula::LtZero(scaled - ypt));
    }
    case AtomClass::kT2: {
      if (!contains(sc.selected, c.coeff)) return Formula::LtZero(c.rest);  // b < 0
      const Polynomial cof = cofactor(sc.selected, c.coeff);
      const LinearTerm scaled = c.rest * cof;
      return by_cofactor_sign(cof, Formula::LtZero(scaled - ypt),
                              Formula::LtZero(ypt - scaled));
    }
    case AtomClass::kT3:
    case AtomClass::kT4: {
      Formula atom = [&] {
        if (!contains(sc.selected, c.coeff)) return Formula::Div(c.modulus, c.rest);
        const Polynomial cof = cofactor(sc.selected, c.coeff);
        return Formula::Div(c.modulus * cof, ypt + c.rest * cof);
      }();
      return c.cls == AtomClass::kT3 ? atom : Formula::Not(atom);
    }
    default:
      throw NotNormalizedError("normalize_in: equality survived elimination");
  }
}

bool binds(const Formula& f, const VarId& y) {
  if (f.is_quantifier() && f.var() == y) return true;
  for (const auto& k : f.children()) {
    if (binds(k, y)) return true;
  }
  return false;
}

}  // namespace

NormalizedExists normalize_in(const Formula& input, const VarId& y, FreshVars& fresh) {
  if (count_unbounded_quantifiers(input) != 0) {
    throw NotNormalizedError("normalize_in: body has unbounded quantifiers");
  }
  fresh.reserve_all(all_vars(input));
  Formula f = binds(input, y) ? rename_bound(input, fresh) : input;
  f = eliminate_equalities(to_nnf(f), y);

  NormalizedExists out;
  out.var = fresh.fresh(y.name);
  out.cases = sign_cases(coefficient_set(f, y));

  std::vector<Formula> disjuncts;
  for (const auto& sc : out.cases) {
    Formula rewritten = map_literals(f, [&](const Formula& lit) {
      return rewrite_literal(lit, y, out.var, sc);
    });
    std::vector<Formula> conj;
    if (sc.guard.kind() != FormulaKind::kTrue) conj.push_back(sc.guard);
    conj.push_back(std::move(rewritten));
    conj.push_back(Formula::Div(sc.nu, LinearTerm::Var(out.var)));
    disjuncts.push_back(Formula::And(std::move(conj)));
  }
  out.body = disjuncts.size() == 1 ? disjuncts[0] : Formula::Or(std::move(disjuncts));
  return out;
}

bool is_normalized_in(const Formula& f, const VarId& y) {
  switch (f.kind()) {
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
      for (const auto& k : f.children()) {
        if (!is_normalized_in(k, y)) return false;
      }
      return true;
    case FormulaKind::kBExists:
    case FormulaKind::kBForall:
      return f.var() != y && is_normalized_in(f.child(), y);
    case FormulaKind::kExists:
    case FormulaKind::kForall:
      return false;
    default:
      break;
  }
  if (!f.is_literal()) return false;
  const bool negated = f.kind() == FormulaKind::kNot;
  const Formula& atom = negated ? f.child() : f;
  if (!atom.is_atom() || atom.kind() == FormulaKind::kTrue ||
      atom.kind() == FormulaKind::kFalse || !atom.term().mentions(y)) {
    return true;
  }
  const Polynomial c = atom.term().coeff(y);
  if (atom.kind() == FormulaKind::kLt) {
    return !negated && (c == Polynomial(1) || c == Polynomial(-1));
  }
  if (atom.kind() == FormulaKind::kDiv) return c == Polynomial(1);
  return false;
}

}  // namespace ppres
