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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ppres/ast.hpp"

namespace ppres {

using Rational = boost::multiprecision::cpp_rational;

// The box [lo(t), hi(t)]^d for the free variables of a family.
struct CountBox {
  Polynomial lo;
  Polynomial hi;
};

struct CountRow {
  std::uint64_t t = 0;
  BigInt count = 0;
  bool truncated = false;  // some member lies just outside the box
};

struct CountTable {
  std::vector<VarId> vars;
  CountBox box;
  std::vector<CountRow> rows;
};

// |S_t ∩ box| for each t in [t_min, t_max]. The family must have no
// unbounded quantifiers.
CountTable count_family(const Formula& family, std::uint64_t t_min, std::uint64_t t_max,
                        const CountBox& box);

struct ResidueFit {
  std::uint64_t residue = 0;
  std::vector<Rational> coeffs;  // lowest degree first; empty when underdetermined
  std::vector<std::uint64_t> ts;
  std::vector<Rational> residuals;
  bool exact = false;     // every residual is zero
  bool integral = false;  // exact with integer coefficients
};

struct QuasiPolynomialFit {
  std::uint64_t period = 1;
  unsigned degree = 0;
  std::vector<ResidueFit> classes;
  bool exact = false;
};

// Least-squares fit of a degree-`degree` polynomial per residue class of t
// modulo `period`, computed in exact rational arithmetic over the rows that
// are not truncated.
QuasiPolynomialFit fit_quasi_polynomial(const CountTable& table, std::uint64_t period,
                                        unsigned degree);

std::string format_polynomial(const std::vector<Rational>& coeffs);

}  // namespace ppres
