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

#include "ppres/parser.hpp"
#include "ppres/poly.hpp"

namespace ppres {
namespace {

const Polynomial t = Polynomial::T();

TEST(Poly, EvalExamples) {
  EXPECT_EQ(Polynomial({1, 2}).eval(3), 7);
  EXPECT_EQ(Polynomial().eval(5), 0);
  EXPECT_EQ((t * t - t).eval(4), 12);
}

TEST(Poly, RingExamples) {
  EXPECT_EQ(t * (t + 1), Polynomial({0, 1, 1}));
  EXPECT_TRUE((Polynomial({-1, 2}) + Polynomial({1, -2})).is_zero());
  EXPECT_EQ(Polynomial(2) * Polynomial(-3), Polynomial(-6));
}

TEST(Poly, Canonical) {
  Polynomial p({3, 0, 0});
  EXPECT_EQ(p.coeffs().size(), 1u);
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ(Polynomial({0, 0}).degree(), -1);
  EXPECT_EQ(p, Polynomial(3));
  EXPECT_EQ(t - t, Polynomial());
}

TEST(Poly, ProductExamples) {
  EXPECT_EQ(product(std::span<const Polynomial>()), Polynomial(1));
  const Polynomial two_t[] = {t, 2};
  EXPECT_EQ(product(two_t), Polynomial({0, 2}));
  const Polynomial diff[] = {t - 1, t + 1};
  EXPECT_EQ(product(diff), Polynomial({-1, 0, 1}));
}

TEST(Poly, ConstantSign) {
  EXPECT_EQ(constant_sign(Polynomial()), ConstantSign::kZero);
  EXPECT_EQ(constant_sign(Polynomial(-4)), ConstantSign::kNegative);
  EXPECT_EQ(constant_sign(Polynomial(7)), ConstantSign::kPositive);
  EXPECT_EQ(constant_sign(t - 3), ConstantSign::kNonconstant);
}

TEST(Poly, BigCoefficientsStayExact) {
  Polynomial p = Polynomial::Monomial(BigInt(1) << 70, 3) + Polynomial(1);
  EXPECT_EQ(p.eval(2), (BigInt(1) << 73) + 1);
}

TEST(Poly, Printing) {
  EXPECT_EQ((t * t * 2 - t + 5).to_string(), "2t^2 - t + 5");
  EXPECT_EQ(parse_polynomial((t * t * 2 - t + 5).to_string()), t * t * 2 - t + 5);
}

Polynomial random_poly(std::mt19937_64& rng) {
  std::vector<BigInt> c(rng() % 4);
  for (auto& x : c) x = static_cast<long long>(rng() % 21) - 10;
  return Polynomial(std::move(c));
}

TEST(PolyProperty, EvalIsARingHomomorphism) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Polynomial p = random_poly(rng), q = random_poly(rng);
    const std::uint64_t at = rng() % 30;
    EXPECT_EQ((p * q).eval(at), p.eval(at) * q.eval(at));
    EXPECT_EQ((p + q).eval(at), p.eval(at) + q.eval(at));
    EXPECT_EQ((-p).eval(at), -p.eval(at));
  }
}

TEST(PolyProperty, SignsOnNaturalsMatchEnumeration) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const Polynomial p = random_poly(rng) * random_poly(rng);
    const SignsTaken s = signs_on_naturals(p);
    SignsTaken seen;
    for (std::uint64_t at = 0; at < 200; ++at) {
      const BigInt v = p.eval(at);
      seen.negative |= v < 0;
      seen.zero |= v == 0;
      seen.positive |= v > 0;
    }
    // Beyond 200 the sign is that of the leading coefficient for these sizes.
    if (!p.is_zero()) (p.leading() > 0 ? seen.positive : seen.negative) = true;
    EXPECT_EQ(s.negative, seen.negative) << p;
    EXPECT_EQ(s.zero, seen.zero) << p;
    EXPECT_EQ(s.positive, seen.positive) << p;
  }
}

}  // namespace
}  // namespace ppres
