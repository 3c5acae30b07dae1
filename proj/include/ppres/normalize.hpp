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

#pragma once

#include <set>
#include <vector>

#include "ppres/ast.hpp"

namespace ppres {

// Literal shapes relative to the variable being eliminated:
//   T1  alpha*y < a          T4  ~D_eps(zeta*y + d)
//   T2  b < beta*y           T5  eta*y = e
//   T3  D_gamma(delta*y + c) T6  theta*y != f
//   T7  y-free literal
enum class AtomClass { kT1, kT2, kT3, kT4, kT5, kT6, kT7 };

struct ClassifiedLiteral {
  AtomClass cls = AtomClass::kT7;
  Polynomial coeff;     // coefficient of y, leading coefficient positive
  LinearTerm rest;      // a, b, c, d, e or f; y-free
  Polynomial modulus;   // gamma / epsilon for T3, T4
};

// A choice S' of the coefficients that are nonzero at t.
struct SignCase {
  std::vector<Polynomial> selected;  // S'
  Formula guard;                     // t-only; constant conjuncts folded
  Polynomial nu;                     // product of S'
};

// Pushes negations onto atoms, dualizing connectives and quantifiers of
// both kinds. A negated strict inequality ~(s < 0) becomes -s - 1 < 0.
Formula to_nnf(const Formula& f);

ClassifiedLiteral classify_literal(const Formula& literal, const VarId& y);

// Rewrites T5 and T6 literals mentioning y into T1/T2 combinations.
Formula eliminate_equalities(const Formula& f, const VarId& y);

// Distinct y-coefficients of T1-T4 literals, in polynomial order.
std::vector<Polynomial> coefficient_set(const Formula& f, const VarId& y);

// All subsets S' of `coeffs` whose guard is satisfiable for some t, i.e.
// those that do not force a nonzero constant to vanish.
std::vector<SignCase> sign_cases(const std::vector<Polynomial>& coeffs);

struct NormalizedExists {
  VarId var;                    // y'
  Formula body;                 // normalized in y'
  std::vector<SignCase> cases;  // one disjunct of body per case
};

// Rewrites E y. f into an equivalent E y'. body with body normalized in y'
// (every literal mentioning y' has coefficient exactly 1, or -1 in lower
// bounds). f must contain only bounded quantifiers and must not bind y.
NormalizedExists normalize_in(const Formula& f, const VarId& y, FreshVars& fresh);

// Syntactic check of the normalized shape with respect to y.
bool is_normalized_in(const Formula& f, const VarId& y);

}  // namespace ppres
