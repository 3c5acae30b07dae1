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

#include "random_formulas.hpp"

namespace ppres::testing {
namespace {

std::int64_t pick(std::mt19937_64& rng, std::int64_t n) { return static_cast<std::int64_t>(rng() % n); }

std::int64_t nonzero(std::mt19937_64& rng, std::int64_t r) {
  const std::int64_t v = pick(rng, 2 * r) - r;
  return v >= 0 ? v + 1 : v;
}

Polynomial bound_coeff(std::mt19937_64& rng, bool constant) {
  static const Polynomial pool[] = {1, -1, 2, -2, 3, Polynomial::T(), Polynomial{1, 1}};
  return pool[pick(rng, constant ? 5 : 7)];
}

Polynomial free_coeff(std::mt19937_64& rng) {
  if (pick(rng, 4) != 0) return Polynomial(nonzero(rng, 5));
  const int degree = 1 + static_cast<int>(pick(rng, 2));
  std::vector<BigInt> c(degree + 1);
  for (auto& x : c) x = pick(rng, 11) - 5;
  c.back() = nonzero(rng, 5);
  return Polynomial(std::move(c));
}

Polynomial constant_part(std::mt19937_64& rng) {
  if (pick(rng, 3) != 0) return Polynomial(pick(rng, 11) - 5);
  return Polynomial{pick(rng, 11) - 5, nonzero(rng, 3)};
}

Polynomial modulus(std::mt19937_64& rng, bool constant) {
  static const Polynomial pool[] = {2, 3, Polynomial::T(), Polynomial{-2, 1}, Polynomial{1, 1}};
  return pool[pick(rng, constant ? 2 : 5)];
}

struct Scope {
  std::vector<VarId> bound;
  std::vector<VarId> free;
  bool nested = false;  // two unbounded quantifiers
};

LinearTerm random_term(std::mt19937_64& rng, const Scope& s, const VarId* forced) {
  LinearTerm term(constant_part(rng));
  for (const auto& v : s.bound) {
    if ((forced && v == *forced) || pick(rng, 10) < 5) term += LinearTerm::Var(v, bound_coeff(rng, s.nested));
  }
  for (const auto& v : s.free) {
    if (pick(rng, 10) < 6) term += LinearTerm::Var(v, free_coeff(rng));
  }
  return term;
}

Formula random_atom(std::mt19937_64& rng, const Scope& s, const VarId* forced) {
  LinearTerm lhs = random_term(rng, s, forced);
  LinearTerm rhs(constant_part(rng));
  if (pick(rng, 2) == 0) rhs = random_term(rng, s, nullptr);
  switch (pick(rng, 20)) {
    case 0: case 1: case 2: case 3: case 4:
      return Formula::Lt(lhs, rhs);
    case 5: case 6: case 7: case 8:
      return Formula::Le(lhs, rhs);
    case 9: case 10: case 11:
      return Formula::Eq(lhs, rhs);
    case 12:
      return Formula::Ne(lhs, rhs);
    case 13: case 14: case 15: case 16:
      return Formula::Div(modulus(rng, s.nested), lhs);
    default:
      return Formula::Not(Formula::Div(modulus(rng, s.nested), lhs));
  }
}

Formula random_body(std::mt19937_64& rng, const Scope& s, const std::vector<VarId>& must) {
  const int atoms = 2 + static_cast<int>(pick(rng, 3));
  std::vector<Formula> lits;
  for (int i = 0; i < atoms; ++i) {
    const VarId* forced = must.empty() ? nullptr : &must[i % must.size()];
    lits.push_back(random_atom(rng, s, forced));
  }
  // Random binary tree over the literals, with occasional negation.
  while (lits.size() > 1) {
    const std::size_t i = pick(rng, static_cast<std::int64_t>(lits.size() - 1));
    Formula a = lits[i], b = lits[i + 1];
    Formula c = pick(rng, 3) == 0 ? Formula::Or({a, b}) : Formula::And({a, b});
    if (pick(rng, 8) == 0) c = Formula::Not(c);
    lits.erase(lits.begin() + i + 1);
    lits[i] = c;
  }
  return lits[0];
}

Polynomial random_bound(std::mt19937_64& rng) {
  static const Polynomial pool[] = {Polynomial::T(), Polynomial{-1, 1}, Polynomial{0, 2}, 3};
  return pool[pick(rng, 4)];
}

Formula quantify(std::mt19937_64& rng, const VarId& v, Formula body) {
  return pick(rng, 2) == 0 ? Formula::Exists(v, std::move(body)) : Formula::Forall(v, std::move(body));
}

Formula bquantify(std::mt19937_64& rng, const VarId& v, Formula body) {
  Polynomial b = random_bound(rng);
  return pick(rng, 2) == 0 ? Formula::BExists(v, std::move(b), std::move(body))
                           : Formula::BForall(v, std::move(b), std::move(body));
}

}  // namespace

Formula random_formula(std::mt19937_64& rng) {
  const VarId x{"x"}, w{"w"}, y{"y"}, z{"z"};
  Scope s;
  s.free.push_back(x);
  const int shape = static_cast<int>(pick(rng, 4));
  if (shape == 0 && pick(rng, 2) == 0) s.free.push_back(w);
  switch (shape) {
    case 0:
      s.bound = {y};
      return quantify(rng, y, random_body(rng, s, {y}));
    case 1:
      s.bound = {y, z};
      return quantify(rng, y, bquantify(rng, z, random_body(rng, s, {y, z})));
    case 2:
      s.bound = {z, y};
      return bquantify(rng, z, quantify(rng, y, random_body(rng, s, {y, z})));
    default:
      s.bound = {y, z};
      s.nested = true;
      return quantify(rng, y, quantify(rng, z, random_body(rng, s, {z, y})));
  }
}

std::vector<Formula> random_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<Formula> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_formula(rng));
  return out;
}

Formula random_qfree(std::mt19937_64& rng, const std::vector<VarId>& vars, int atoms) {
  Scope s;
  s.free = vars;
  std::vector<Formula> lits;
  for (int i = 0; i < atoms; ++i) lits.push_back(random_atom(rng, s, nullptr));
  while (lits.size() > 1) {
    Formula a = lits.back();
    lits.pop_back();
    Formula b = lits.back();
    lits.pop_back();
    Formula c = pick(rng, 2) == 0 ? Formula::Or({a, b}) : Formula::And({a, b});
    if (pick(rng, 5) == 0) c = Formula::Not(c);
    lits.insert(lits.begin() + pick(rng, static_cast<std::int64_t>(lits.size() + 1)), c);
  }
  return lits[0];
}

Formula random_bounded(std::mt19937_64& rng) {
  const VarId x{"x"}, w{"w"}, z{"z"}, u{"u"};
  Scope s;
  s.free = {x};
  if (pick(rng, 2) == 0) s.free.push_back(w);
  if (pick(rng, 2) == 0) {
    s.bound = {z};
    return bquantify(rng, z, random_body(rng, s, {z}));
  }
  s.bound = {z, u};
  return bquantify(rng, z, bquantify(rng, u, random_body(rng, s, {z, u})));
}

}  // namespace ppres::testing
