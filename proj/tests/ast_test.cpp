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

#include <gtest/gtest.h>

#include "ppres/ast.hpp"
#include "ppres/error.hpp"
#include "ppres/parser.hpp"

namespace ppres {
namespace {

const Polynomial t = Polynomial::T();
const VarId x{"x"}, y{"y"}, z{"z"};

SynTerm::Var var(const VarId& v) { return {v}; }

std::shared_ptr<const SynTerm> node(SynTerm s) {
  return std::make_shared<const SynTerm>(std::move(s));
}

TEST(Term, NormalizeExamples) {
  auto fx = node({SynTerm::Scale{t, node({var(x)})}});
  EXPECT_EQ(normalize_term({SynTerm::Add{fx, fx}}), LinearTerm::Var(x, t * 2));
  EXPECT_EQ(normalize_term({SynTerm::Scale{t, fx}}), LinearTerm::Var(x, t * t));
  auto one = node({SynTerm::One{}});
  auto scaled = node({SynTerm::Scale{Polynomial({1, 2}), one}});
  EXPECT_EQ(normalize_term({SynTerm::Sub{scaled, one}}), LinearTerm(Polynomial({0, 2})));
}

TEST(Substitute, Examples) {
  Formula lt = Formula::Lt(LinearTerm::Var(y), LinearTerm::Var(x));
  Formula s = substitute(lt, y, LinearTerm::Var(x) + LinearTerm(1));
  EXPECT_FALSE(evaluate(s, 0, {{x, 3}}));
  EXPECT_FALSE(s.term().mentions(x));

  Formula capture = Formula::BExists(z, t, Formula::Lt(LinearTerm::Var(z), LinearTerm::Var(y)));
  Formula r = substitute(capture, y, LinearTerm::Var(z) + LinearTerm(1));
  ASSERT_EQ(r.kind(), FormulaKind::kBExists);
  EXPECT_NE(r.var(), z);
  EXPECT_TRUE(occurs_free(r, z));
  EXPECT_TRUE(alpha_equivalent(r, parse_formula("Eb w <= t. w < z + 1")));

  Formula d = Formula::Div(t, LinearTerm::Var(y) + LinearTerm(3));
  EXPECT_EQ(substitute(d, y, LinearTerm::Var(x, 2)), Formula::Div(t, LinearTerm::Var(x, 2) + LinearTerm(3)));
}

TEST(Evaluate, Examples) {
  EXPECT_FALSE(evaluate(parse_formula("D[t](x)"), 0, {{x, 7}}));
  EXPECT_TRUE(evaluate(parse_formula("t*x <= t^2*1"), 3, {{x, 2}}));
  EXPECT_FALSE(evaluate(parse_formula("Eb z <= t - 2. z = z"), 1, {}));
  EXPECT_TRUE(evaluate(parse_formula("Ab z <= t - 2. z != z"), 1, {}));
  EXPECT_THROW(evaluate(parse_formula("E y. y < x"), 1, {{x, 0}}), UnboundedQuantifierError);
  EXPECT_THROW(evaluate(parse_formula("y < x"), 1, {{x, 0}}), MissingBindingError);
}

TEST(Evaluate, NegativeModulusDividesLikeItsAbsoluteValue) {
  EXPECT_TRUE(evaluate(parse_formula("D[t - 5](x)"), 2, {{x, 6}}));
  EXPECT_FALSE(evaluate(parse_formula("D[t - 5](x)"), 2, {{x, 7}}));
}

TEST(Quantifiers, CountUnbounded) {
  EXPECT_EQ(count_unbounded_quantifiers(parse_formula("Eb z <= t. z < x")), 0u);
  EXPECT_EQ(count_unbounded_quantifiers(parse_formula("E y. y < x")), 1u);
  EXPECT_EQ(count_unbounded_quantifiers(parse_formula("A y. E z. z < y")), 2u);
  EXPECT_EQ(count_quantifiers(parse_formula("A y. Eb z <= 3. z < y")), 2u);
}

TEST(Vars, FreeAndBound) {
  Formula f = parse_formula("E y. y < x /\\ (Ab z <= t. z != w)");
  EXPECT_EQ(free_vars(f), (std::set<VarId>{x, VarId{"w"}}));
  EXPECT_FALSE(occurs_free(f, y));
}

TEST(Alpha, RenamedBinderIsEquivalent) {
  EXPECT_TRUE(alpha_equivalent(parse_formula("E y. y < x"), parse_formula("E u. u < x")));
  EXPECT_FALSE(alpha_equivalent(parse_formula("E y. y < x"), parse_formula("E x. x < x")));
}

TEST(Fresh, NeverReusesReservedNames) {
  FreshVars fresh;
  fresh.reserve(VarId{"z", 1});
  VarId a = fresh.fresh("z");
  VarId b = fresh.fresh("z");
  EXPECT_NE(a.display(), "z_1");
  EXPECT_NE(a, b);
}

TEST(Hashing, EqualFormulasHashEqually) {
  Formula a = parse_formula("x + 1 < 2*y /\\ D[3](x)");
  Formula b = parse_formula("x + 1 < 2*y /\\ D[3](x)");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
}

}  // namespace
}  // namespace ppres
