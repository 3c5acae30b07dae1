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

#include "lemma_checks.hpp"
#include "ppres/eliminate.hpp"
#include "ppres/normalize.hpp"
#include "ppres/oracle.hpp"
#include "ppres/parser.hpp"
#include "random_formulas.hpp"

namespace ppres {
namespace {

const Polynomial t = Polynomial::T();
const VarId x{"x"}, y{"y"}, z{"z"}, b{"b"};

void expect_pass(const Formula& phi, const Formula& psi, GridSpec grid = {}) {
  const EquivReport r = check_equiv(phi, psi, grid);
  EXPECT_EQ(r.status, EquivReport::Status::kPass)
      << print(phi) << "  vs  " << print(psi) << " : " << to_string(r.status) << " " << r.note;
}

TEST(MinusInfinity, Examples) {
  EXPECT_EQ(phi_minus_infinity(parse_formula("b < y"), y), Formula::False());
  EXPECT_EQ(phi_minus_infinity(parse_formula("y < a"), y), Formula::True());
  const Formula d = parse_formula("D[t](y + c)");
  EXPECT_EQ(phi_minus_infinity(d, y), d);
  EXPECT_EQ(simplify(phi_minus_infinity(parse_formula("y < a /\\ (b < y \\/ D[3](y))"), y)),
            parse_formula("D[3](y)"));
}

TEST(BSet, Examples) {
  FreshVars fresh;
  auto entries = lower_bound_terms(parse_formula("b < y"), y, fresh);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].templ, LinearTerm::Var(b));
  EXPECT_TRUE(entries[0].binders.empty());

  EXPECT_TRUE(lower_bound_terms(parse_formula("y < a"), y, fresh).empty());

  fresh.reserve_all(std::vector<VarId>{x, y, z});
  entries = lower_bound_terms(parse_formula("Eb z <= t. x + z < y"), y, fresh);
  ASSERT_EQ(entries.size(), 1u);
  ASSERT_EQ(entries[0].binders.size(), 1u);
  const auto& [c, bound] = entries[0].binders[0];
  EXPECT_NE(c, z);
  EXPECT_EQ(bound, t);
  EXPECT_EQ(entries[0].templ, LinearTerm::Var(x) + LinearTerm::Var(c));
}

TEST(CaseSplits, Examples) {
  auto none = case_splits_for({});
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0].guard, Formula::True());
  EXPECT_EQ(none[0].delta, Polynomial(1));

  auto one = case_splits_for({t - 2}, false);
  ASSERT_EQ(one.size(), 3u);
  for (const auto& c : one) {
    if (c.negative.size() == 1) EXPECT_EQ(c.delta, 2 - t);
    if (c.positive.size() == 1) EXPECT_EQ(c.delta, t - 2);
    if (c.negative.empty() && c.positive.empty()) EXPECT_EQ(c.delta, Polynomial(1));
  }
  EXPECT_EQ(case_splits_for({t, t + 1}, false).size(), 9u);
  // Constant moduli never change sign: only the positive split survives.
  EXPECT_EQ(case_splits_for({2, 3}).size(), 1u);
}

TEST(CaseSplits, DeltaPositiveWhereGuardHolds) {
  const std::vector<std::vector<Polynomial>> sets = {
      {t - 2}, {t, t + 1}, {t - 2, 3}, {t * t - 5, -t}, {2 - t, t - 2}, {t - 1, t - 3, t - 5}};
  for (bool prune : {false, true}) {
    for (const auto& s : sets) {
      const auto cases = case_splits_for(s, prune);
      for (std::uint64_t tt = 0; tt <= 50; ++tt) {
        int holding = 0;
        for (const auto& c : cases) {
          if (!evaluate(c.guard, tt, {})) continue;
          ++holding;
          EXPECT_GT(c.delta.eval(tt), 0) << "t=" << tt << " delta " << c.delta;
        }
        EXPECT_EQ(holding, 1) << "t=" << tt;
      }
    }
  }
}

TEST(CaseSplits, ReadFromNormalizedFormula) {
  auto cases = divisibility_case_splits(parse_formula("D[t - 2](y + x) /\\ y < x"), y, false);
  EXPECT_EQ(cases.size(), 3u);
  EXPECT_EQ(divisibility_moduli(parse_formula("D[3](y) \\/ ~D[t](y + 1) \\/ D[5](x)"), y),
            (std::vector<Polynomial>{3, t}));
}

Formula exists_eliminated(const char* body_text) {
  const Formula body = parse_formula(body_text);
  FreshVars fresh;
  fresh.reserve_all(all_vars(body));
  NormalizedExists n = normalize_in(body, y, fresh);
  return eliminate_exists(n.body, n.var, fresh);
}

TEST(EliminateExists, Examples) {
  const GridSpec grid{0, 6, 20};
  Formula f = exists_eliminated("x < y /\\ y < x + 2");
  EXPECT_EQ(count_unbounded_quantifiers(f), 0u);
  expect_pass(f, Formula::True(), grid);

  f = exists_eliminated("0 < y /\\ y < x");
  expect_pass(f, parse_formula("x >= 2"), grid);

  f = exists_eliminated("D[2](y) /\\ b < y");
  expect_pass(f, Formula::True(), grid);
}

TEST(BoundAll, Examples) {
  const Formula worked = parse_formula("E x. 2*x <= a1 /\\ D[5](3*x - a2)");
  const Formula out = bound_all_quantifiers(worked);
  EXPECT_EQ(count_unbounded_quantifiers(out), 0u);
  expect_pass(out, Formula::True());

  const Formula bounded = parse_formula("Eb z <= t - 1 . (2t)*z <= x /\\ x <= (2t)*z + t");
  EXPECT_EQ(bound_all_quantifiers(bounded), simplify(bounded));

  const Formula gap = parse_formula("A y. y < x \\/ x < y + 2");
  const Formula g = bound_all_quantifiers(gap);
  EXPECT_EQ(count_unbounded_quantifiers(g), 0u);
  expect_pass(g, Formula::True(), GridSpec{0, 12, 20});
}

TEST(BoundAll, ExpansionLimitKeepsEquivalence) {
  const Formula f = parse_formula("E y. x < 3*y /\\ 3*y < x + 4 /\\ ~D[2](y)");
  PipelineOptions opts;
  opts.simplify.expansion_limit = 8;
  const Formula a = bound_all_quantifiers(f);
  const Formula e = bound_all_quantifiers(f, opts);
  EXPECT_LE(count_quantifiers(e), count_quantifiers(a));
  expect_pass(f, e, GridSpec{0, 4, 15});
}

TEST(BoundAll, StatsAreReported) {
  PipelineStats stats;
  bound_all_quantifiers(parse_formula("A y. E z. y < 2*z /\\ D[3](z - x)"), {}, &stats);
  EXPECT_EQ(stats.eliminated, 2u);
  EXPECT_GE(stats.div_cases, 1u);
  EXPECT_GE(stats.fresh_vars, 2u);
}

TEST(BoundAllProperty, RandomFormulas) {
  auto formulas = testing::random_corpus(77, 12);
  for (const auto& f : formulas) {
    const Formula out = bound_all_quantifiers(f);
    EXPECT_EQ(count_unbounded_quantifiers(out), 0u) << print(f);
    expect_pass(f, out, GridSpec{0, 5, 8});
  }
}

TEST(Lemmas, BoundaryAndStabilityOnSmallSample) {
  testing::LemmaConfig config;
  config.dense_limit = 2000;
  config.random_points = 40;
  testing::BoundaryTally boundary;
  testing::StabilityTally stability;
  std::mt19937_64 rng(3);
  const char* texts[] = {"E y. x < 2*y /\\ D[3](y + x)", "E y. t*y < x \\/ ~D[t + 1](y)",
                         "E y. Eb z <= t. x + z < y /\\ y < x + 2*z /\\ D[2](y)"};
  for (const char* text : texts) {
    for (const auto& inst : testing::innermost_exists(parse_formula(text))) {
      const testing::PreparedInstance p = testing::prepare(inst);
      for (std::uint64_t tt = 0; tt <= 6; ++tt) {
        for (std::int64_t xv = -6; xv <= 6; xv += 3) {
          Assignment params;
          for (const auto& v : p.params) params[v] = xv;
          testing::check_boundary(p, tt, params, config, boundary);
          testing::check_stability(p, tt, params, config, rng, stability);
        }
      }
    }
  }
  EXPECT_GT(boundary.samples, 50u);
  EXPECT_EQ(boundary.violations, 0u) << boundary.first_violation;
  EXPECT_GT(stability.samples, 50u);
  EXPECT_EQ(stability.late, 0u) << stability.first_failure;
  EXPECT_EQ(stability.exhausted, 0u) << stability.first_failure;
  EXPECT_EQ(stability.periodicity_failures, 0u) << stability.first_failure;
}

}  // namespace
}  // namespace ppres
