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

#include <random>

#include <gtest/gtest.h>

#include "ppres/eliminate.hpp"
#include "ppres/oracle.hpp"
#include "ppres/parser.hpp"
#include "random_formulas.hpp"

namespace ppres {
namespace {

Formula p(const char* s) { return parse_formula(s); }

TEST(Simplify, Examples) {
  EXPECT_EQ(simplify(Formula::And({Formula::True(), p("x < 0")})), p("x < 0"));
  EXPECT_EQ(simplify(Formula::Or({p("x < 0"), p("x < 0")})), p("x < 0"));
  SimplifyOptions unroll;
  unroll.expansion_limit = 4;
  EXPECT_EQ(simplify(p("Eb z <= 0. z + x < 3"), unroll), p("x < 3"));
  EXPECT_EQ(simplify(p("Eb z <= 0. z + x < 3")), p("x < 3"));
}

TEST(Simplify, ConstantFolding) {
  EXPECT_EQ(simplify(p("1 < 2")), Formula::True());
  EXPECT_EQ(simplify(p("D[3](7)")), Formula::False());
  EXPECT_EQ(simplify(p("D[0](x)")), Formula::False());
  EXPECT_EQ(simplify(p("D[1](x)")), Formula::True());
  EXPECT_EQ(simplify(p("x < 0 /\\ 0 != 0")), Formula::False());
  EXPECT_EQ(simplify(p("~~(x < 0)")), p("x < 0"));
}

TEST(Simplify, ParameterSigns) {
  // t + 1 is positive on every natural number, t^2 - t is never negative.
  EXPECT_EQ(simplify(p("0 < t + 1")), Formula::True());
  EXPECT_EQ(simplify(p("t^2 < t")), Formula::False());
  EXPECT_EQ(simplify(p("Eb z <= -t - 1. z < x")), Formula::False());
  EXPECT_EQ(simplify(p("Ab z <= -1. z < x")), Formula::True());
}

TEST(Simplify, BoundedRangeFolding) {
  EXPECT_EQ(simplify(p("Eb z <= t. z < 0")), Formula::False());
  EXPECT_EQ(simplify(p("Ab z <= t. -1 < z")), Formula::True());
}

TEST(Simplify, Unrolling) {
  SimplifyOptions unroll;
  unroll.expansion_limit = 3;
  const Formula f = simplify(p("Eb z <= 2. x = z"), unroll);
  EXPECT_EQ(count_quantifiers(f), 0u);
  EXPECT_TRUE(eval_bounded(f, 0, {{VarId{"x"}, 2}}));
  EXPECT_FALSE(eval_bounded(f, 0, {{VarId{"x"}, 3}}));
  EXPECT_EQ(count_quantifiers(simplify(p("Eb z <= 9. x = z"), unroll)), 1u);
}

// Each bounded formula is compared before and after simplification at every point.
void check_preserves(std::uint64_t seed, std::size_t limit) {
  std::mt19937_64 rng(seed);
  SimplifyOptions options;
  options.expansion_limit = limit;
  for (int i = 0; i < 120; ++i) {
    const Formula f = rng() % 2 ? testing::random_bounded(rng) : Formula::Not(testing::random_bounded(rng));
    const Formula s = simplify(f, options);
    const VarId x{"x"}, w{"w"};
    for (std::uint64_t tt = 0; tt <= 6; ++tt) {
      for (std::int64_t xv = -8; xv <= 8; ++xv) {
        for (std::int64_t wv = -3; wv <= 3; ++wv) {
          const Assignment env{{x, xv}, {w, wv}};
          ASSERT_EQ(evaluate(f, tt, env), evaluate(s, tt, env))
              << print(f) << "\n  simplified " << print(s) << "\n  t=" << tt << " x=" << xv << " w=" << wv;
        }
      }
    }
  }
}

TEST(SimplifyProperty, PreservesBoundedSemantics) { check_preserves(41, 0); }
TEST(SimplifyProperty, PreservesSemanticsWhenUnrolling) { check_preserves(42, 5); }

TEST(SimplifyProperty, Idempotent) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const Formula s = simplify(testing::random_bounded(rng));
    EXPECT_EQ(simplify(s), s) << print(s);
  }
}

}  // namespace
}  // namespace ppres
