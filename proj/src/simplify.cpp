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

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_set>

#include "ppres/eliminate.hpp"

namespace ppres {
namespace {

// Sign information valid for every t >= 0.
struct NatSign {
  bool nonneg = false;
  bool positive = false;
  bool nonpos = false;
  bool negative = false;
};

NatSign sign_on_naturals(const Polynomial& p) {
  const SignsTaken taken = signs_on_naturals(p);
  NatSign s;
  s.nonneg = !taken.negative;
  s.nonpos = !taken.positive;
  s.positive = !taken.negative && !taken.zero;
  s.negative = !taken.positive && !taken.zero;
  return s;
}

BigInt sym_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  if (r > m / 2) r -= m;
  return r;
}

Polynomial map_coeffs(const Polynomial& p, const auto& fn) {
  std::vector<BigInt> c = p.coeffs();
  for (auto& x : c) x = fn(x);
  return Polynomial(std::move(c));
}

BigInt content(const LinearTerm& term, bool with_constant) {
  BigInt g = 0;
  for (const auto& [v, c] : term.coeffs()) {
    for (const auto& x : c.coeffs()) g = gcd(g, abs(x));
  }
  if (with_constant) {
    for (const auto& x : term.constant().coeffs()) g = gcd(g, abs(x));
  }
  return g;
}

LinearTerm divide_vars(const LinearTerm& term, const BigInt& g) {
  LinearTerm out(term.constant());
  for (const auto& [v, c] : term.coeffs()) {
    out += LinearTerm::Var(v, map_coeffs(c, [&](const BigInt& x) { return BigInt(x / g); }));
  }
  return out;
}

Formula fold_div(Polynomial m, LinearTerm term) {
  if (m.is_zero()) return Formula::False();
  if (m.leading() < 0) m = -m;
  if (m.is_one()) return Formula::True();
  if (m.is_constant()) {
    const BigInt mod = m.constant_term();
    LinearTerm reduced(map_coeffs(term.constant(), [&](const BigInt& x) { return sym_mod(x, mod); }));
    for (const auto& [v, c] : term.coeffs()) {
      Polynomial r = map_coeffs(c, [&](const BigInt& x) { return sym_mod(x, mod); });
      if (!r.is_zero()) reduced += LinearTerm::Var(v, std::move(r));
    }
    term = std::move(reduced);
    const BigInt g = gcd(content(term, true), mod);
    BigInt m2 = mod;
    if (g > 1) {
      term = divide_vars(term, g);
      term = LinearTerm(map_coeffs(term.constant(), [&](const BigInt& x) { return BigInt(x / g); })) +
             (term - LinearTerm(term.constant()));
      m2 = mod / g;
      if (m2 == 1) return Formula::True();
    }
    const BigInt gv = gcd(content(term, false), m2);
    if (term.constant().is_constant()) {
      const BigInt c = term.constant().constant_term();
      if (term.is_constant()) return c % m2 == 0 ? Formula::True() : Formula::False();
      if (gv > 1 && c % gv != 0) return Formula::False();
    }
    return Formula::Div(Polynomial(m2), std::move(term));
  }
  return Formula::Div(std::move(m), std::move(term));
}

Formula fold_atom(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kLt: {
      if (f.term().is_constant()) {
        const NatSign s = sign_on_naturals(f.term().constant());
        if (s.negative) return Formula::True();
        if (s.nonneg) return Formula::False();
        return f;
      }
      // g*u + c < 0 with integer c  <=>  u + floor(c / g) < 0
      const BigInt g = content(f.term(), false);
      if (g <= 1 || !f.term().constant().is_constant()) return f;
      const auto& coeffs = f.term().coeffs();
      if (!std::all_of(coeffs.begin(), coeffs.end(), [](const auto& e) { return e.second.is_constant(); })) {
        return f;
      }
      BigInt c = f.term().constant().constant_term();
      BigInt q = c / g;
      if (c % g != 0 && c < 0) --q;
      LinearTerm u = divide_vars(f.term(), g) - LinearTerm(f.term().constant()) + LinearTerm(Polynomial(q));
      return Formula::LtZero(std::move(u));
    }
    case FormulaKind::kEq: {
      if (f.term().is_constant()) {
        const Polynomial& p = f.term().constant();
        if (p.is_zero()) return Formula::True();
        const NatSign s = sign_on_naturals(p);
        if (s.positive || s.negative) return Formula::False();
        return f;
      }
      const BigInt g = content(f.term(), false);
      if (g <= 1) return f;
      const auto& cc = f.term().constant().coeffs();
      if (std::any_of(cc.begin(), cc.end(), [&](const BigInt& x) { return x % g != 0; })) {
        return f.term().constant().is_constant() ? Formula::False() : f;
      }
      LinearTerm u = divide_vars(f.term(), g) - LinearTerm(f.term().constant()) +
                     LinearTerm(map_coeffs(f.term().constant(), [&](const BigInt& x) { return BigInt(x / g); }));
      return Formula::EqZero(std::move(u));
    }
    case FormulaKind::kDiv: {
      Formula out = fold_div(f.modulus(), f.term());
      return out == f ? f : out;
    }
    default:
      return f;
  }
}

Formula negate_constant(const Formula& f) {
  if (f.kind() == FormulaKind::kTrue) return Formula::False();
  if (f.kind() == FormulaKind::kFalse) return Formula::True();
  if (f.kind() == FormulaKind::kNot) return f.child();
  return Formula::Not(f);
}

// Flattens, drops units, detects absorbing elements and removes duplicates.
Formula junction(FormulaKind kind, std::vector<Formula> kids) {
  const FormulaKind unit = kind == FormulaKind::kAnd ? FormulaKind::kTrue : FormulaKind::kFalse;
  const FormulaKind zero = kind == FormulaKind::kAnd ? FormulaKind::kFalse : FormulaKind::kTrue;
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> stack(kids.rbegin(), kids.rend());
  while (!stack.empty()) {
    Formula k = std::move(stack.back());
    stack.pop_back();
    if (k.kind() == unit) continue;
    if (k.kind() == zero) return k;
    if (k.kind() == kind) {
      for (auto it = k.children().rbegin(); it != k.children().rend(); ++it) stack.push_back(*it);
      continue;
    }
    if (seen.insert(k).second) out.push_back(std::move(k));
  }
  for (const auto& k : out) {
    if (k.kind() == FormulaKind::kNot && seen.contains(k.child())) {
      return zero == FormulaKind::kTrue ? Formula::True() : Formula::False();
    }
  }
  if (out.empty()) return unit == FormulaKind::kTrue ? Formula::True() : Formula::False();
  if (out.size() == 1) return out[0];
  return kind == FormulaKind::kAnd ? Formula::And(std::move(out)) : Formula::Or(std::move(out));
}

// Variables bound by enclosing bounded quantifiers, with their bounds.
using Ranges = std::map<VarId, Polynomial>;

Formula simp(const Formula& f, const SimplifyOptions& options, const Ranges& ranges);

// Decides t + range-variable atoms from the extreme values of the term.
// Only reached inside the quantifiers, so 0 <= v <= bound may be assumed.
Formula fold_by_range(const Formula& f, const Ranges& ranges) {
  if (f.kind() != FormulaKind::kLt && f.kind() != FormulaKind::kEq) return f;
  if (f.term().is_constant() || ranges.empty()) return f;
  Polynomial lo = f.term().constant(), hi = f.term().constant();
  for (const auto& [v, c] : f.term().coeffs()) {
    auto it = ranges.find(v);
    if (it == ranges.end() || !c.is_constant()) return f;
    if (c.constant_term() < 0) {
      lo += c * it->second;
    } else {
      hi += c * it->second;
    }
  }
  const NatSign l = sign_on_naturals(lo), h = sign_on_naturals(hi);
  if (f.kind() == FormulaKind::kLt) {
    if (h.negative) return Formula::True();
    if (l.nonneg) return Formula::False();
    return f;
  }
  if (l.positive || h.negative) return Formula::False();
  return f;
}

// Period in v of the body when v occurs only in divisibility atoms with
// constant modulus and coefficient; nullopt otherwise.
std::optional<BigInt> div_period(const Formula& f, const VarId& v) {
  switch (f.kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      return BigInt(1);
    case FormulaKind::kLt:
    case FormulaKind::kEq:
      if (f.term().mentions(v)) return std::nullopt;
      return BigInt(1);
    case FormulaKind::kDiv: {
      if (!f.term().mentions(v)) return BigInt(1);
      const Polynomial a = f.term().coeff(v);
      if (!f.modulus().is_constant() || !a.is_constant() || f.modulus().is_zero()) {
        return std::nullopt;
      }
      const BigInt m = abs(f.modulus().constant_term());
      return BigInt(m / gcd(m, abs(a.constant_term())));
    }
    default: {
      if (f.is_quantifier() && f.var() == v) return BigInt(1);
      BigInt period = 1;
      for (const auto& k : f.children()) {
        auto p = div_period(k, v);
        if (!p) return std::nullopt;
        period = lcm(period, *p);
      }
      return period;
    }
  }
}

LinearTerm term_at(const LinearTerm& term, std::uint64_t r) {
  LinearTerm out(Polynomial(term.constant().eval(r)));
  for (const auto& [v, c] : term.coeffs()) out += LinearTerm::Var(v, Polynomial(c.eval(r)));
  return out;
}

// f with every polynomial evaluated at t = r.
Formula specialize(const Formula& f, std::uint64_t r) {
  switch (f.kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      return f;
    case FormulaKind::kLt:
    case FormulaKind::kEq:
      return f.with_term(term_at(f.term(), r));
    case FormulaKind::kDiv:
      return Formula::Div(Polynomial(f.modulus().eval(r)), term_at(f.term(), r));
    case FormulaKind::kBExists:
      return Formula::BExists(f.var(), Polynomial(f.bound().eval(r)), specialize(f.child(), r));
    case FormulaKind::kBForall:
      return Formula::BForall(f.var(), Polynomial(f.bound().eval(r)), specialize(f.child(), r));
    default: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(specialize(k, r));
      return f.with_children(std::move(kids));
    }
  }
}

// p < 0 or p = 0, possibly negated, with p a non-constant polynomial in t.
struct TCondition {
  Polynomial p;
  bool eq = false;
  bool negated = false;

  bool holds(int sign) const { return (eq ? sign == 0 : sign < 0) != negated; }
};

std::optional<TCondition> t_condition(const Formula& f) {
  const bool negated = f.kind() == FormulaKind::kNot;
  const Formula& a = negated ? f.child() : f;
  if ((a.kind() != FormulaKind::kLt && a.kind() != FormulaKind::kEq) || !a.term().is_constant() ||
      a.term().constant().is_constant()) {
    return std::nullopt;
  }
  return TCondition{a.term().constant(), a.kind() == FormulaKind::kEq, negated};
}

// Joint reasoning about the t-only literals of a conjunction or disjunction:
// drops them when they are valid, folds the node when they are
// contradictory, and specializes the siblings when they pin t to one value.
Formula reason_about_t(const Formula& f, const SimplifyOptions& options, const Ranges& ranges) {
  if (f.kind() != FormulaKind::kAnd && f.kind() != FormulaKind::kOr) return f;
  const bool conj = f.kind() == FormulaKind::kAnd;
  std::vector<TCondition> conds;
  std::vector<Formula> rest;
  for (const auto& k : f.children()) {
    if (auto c = t_condition(k)) {
      conds.push_back(std::move(*c));
    } else {
      rest.push_back(k);
    }
  }
  if (conds.empty()) return f;
  std::vector<Polynomial> polys;
  for (const auto& c : conds) polys.push_back(c.p);
  const SignTable table = sign_table(polys);
  if (!table.exact) return f;
  std::size_t alive = 0;
  std::uint64_t last = 0;
  for (std::size_t t = 0; t < table.horizon; ++t) {
    bool v = conj;
    for (std::size_t i = 0; i < conds.size(); ++i) {
      const bool h = conds[i].holds(table.signs[i][t]);
      v = conj ? v && h : v || h;
    }
    if (v) {
      ++alive;
      last = t;
    }
  }
  if (conj) {
    if (alive == 0) return Formula::False();
    if (alive == table.horizon) return junction(FormulaKind::kAnd, std::move(rest));
    if (alive == 1 && last + 1 < table.horizon) {
      std::vector<Formula> kids{Formula::EqZero(LinearTerm(Polynomial{-static_cast<long long>(last), 1}))};
      for (const auto& k : rest) kids.push_back(simp(specialize(k, last), options, ranges));
      return junction(FormulaKind::kAnd, std::move(kids));
    }
    return f;
  }
  if (alive == table.horizon) return Formula::True();
  if (alive == 0) return junction(FormulaKind::kOr, std::move(rest));
  return f;
}

Formula bounded(const Formula& f, Formula body, const SimplifyOptions& options,
                const Ranges& ranges) {
  const bool exists = f.kind() == FormulaKind::kBExists;
  Polynomial b = f.bound();
  NatSign s = sign_on_naturals(b);
  if (s.negative) return exists ? Formula::False() : Formula::True();
  if (body.kind() == FormulaKind::kTrue || body.kind() == FormulaKind::kFalse) {
    if (s.nonneg) return body;
    // Empty range decides the value when the body is constant.
    const bool truth = body.kind() == FormulaKind::kTrue;
    if (truth != exists) return body;
    if (exists) return simp(Formula::LtZero(LinearTerm(-b - Polynomial(1))), options, ranges);
    return simp(Formula::LtZero(LinearTerm(b)), options, ranges);
  }
  if (!occurs_free(body, f.var())) {
    if (s.nonneg) return body;
    if (exists) {
      return junction(FormulaKind::kAnd,
                      {simp(Formula::LtZero(LinearTerm(-b - Polynomial(1))), options, ranges), body});
    }
    return junction(FormulaKind::kOr, {simp(Formula::LtZero(LinearTerm(b)), options, ranges), body});
  }
  // A range covering a whole period can be cut down to one period.
  if (auto period = div_period(body, f.var())) {
    const Polynomial last(*period - 1);
    if (b != last && sign_on_naturals(b - last).nonneg) {
      b = last;
      s = sign_on_naturals(b);
    }
    if (b == last && exists && body.kind() == FormulaKind::kDiv) {
      // some a*v + r with v over a full period is a multiple of m iff gcd(m, a) | r
      const BigInt m = body.modulus().constant_term();
      const BigInt g = gcd(m, abs(body.term().coeff(f.var()).constant_term()));
      return simp(Formula::Div(Polynomial(g), body.term().without(f.var())), options, ranges);
    }
  }
  if (b.is_constant() && b.constant_term() >= 0 &&
      b.constant_term() <= BigInt(options.expansion_limit)) {
    const long long n = static_cast<long long>(b.constant_term());
    std::vector<Formula> parts;
    for (long long i = 0; i <= n; ++i) {
      parts.push_back(simp(substitute(body, f.var(), LinearTerm(i)), options, ranges));
    }
    return junction(exists ? FormulaKind::kOr : FormulaKind::kAnd, std::move(parts));
  }
  if (exists) return Formula::BExists(f.var(), std::move(b), std::move(body));
  return Formula::BForall(f.var(), std::move(b), std::move(body));
}

Formula simp(const Formula& f, const SimplifyOptions& options, const Ranges& ranges) {
  switch (f.kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      return f;
    case FormulaKind::kLt:
    case FormulaKind::kEq:
    case FormulaKind::kDiv:
      return fold_by_range(fold_atom(f), ranges);
    case FormulaKind::kNot: {
      Formula k = simp(f.child(), options, ranges);
      return negate_constant(k);
    }
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& k : f.children()) kids.push_back(simp(k, options, ranges));
      return reason_about_t(junction(f.kind(), std::move(kids)), options, ranges);
    }
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      Ranges inner = ranges;
      inner.erase(f.var());
      Formula body = simp(f.child(), options, inner);
      if (!occurs_free(body, f.var())) return body;
      return f.with_children({std::move(body)});
    }
    case FormulaKind::kBExists:
    case FormulaKind::kBForall: {
      Ranges inner = ranges;
      inner.insert_or_assign(f.var(), f.bound());
      return bounded(f, simp(f.child(), options, inner), options, ranges);
    }
  }
  return f;
}

}  // namespace

Formula simplify(const Formula& f, const SimplifyOptions& options) {
  return simp(f, options, {});
}

}  // namespace ppres
