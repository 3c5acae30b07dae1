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

#include <cstddef>
#include <utility>
#include <vector>

#include "ppres/ast.hpp"

namespace ppres {

// One symbolic family of lower bounds: `templ` with each binder ranging over
// [0, bound(t)].
struct BSetEntry {
  LinearTerm templ;
  std::vector<std::pair<VarId, Polynomial>> binders;  // outermost first
};

// Sign assignment to the moduli of y-divisibility literals.
struct DivCaseSplit {
  std::vector<Polynomial> negative;  // S-
  std::vector<Polynomial> positive;  // S+
  Formula guard;                     // t-only
  Polynomial delta;                  // positive wherever guard holds
};

struct SimplifyOptions {
  // Bounded quantifiers with a constant bound b, 0 <= b <= limit, are unrolled.
  std::size_t expansion_limit = 0;
};

Formula simplify(const Formula& f, const SimplifyOptions& options = {});

// The following take a formula normalized in y (see normalize_in).

// Upper bounds y < a become 0 = 0, lower bounds b < y become 0 != 0.
Formula phi_minus_infinity(const Formula& f, const VarId& y);

std::vector<BSetEntry> lower_bound_terms(const Formula& f, const VarId& y,
                                         FreshVars& fresh);

// Distinct moduli of D(y + c) and ~D(y + d) literals.
std::vector<Polynomial> divisibility_moduli(const Formula& f, const VarId& y);

// Every sign assignment (negative / positive / zero) to the moduli. With
// `prune`, assignments contradicting a constant modulus are dropped.
std::vector<DivCaseSplit> divisibility_case_splits(const Formula& f, const VarId& y,
                                                   bool prune = true);
std::vector<DivCaseSplit> case_splits_for(const std::vector<Polynomial>& moduli,
                                          bool prune = true);

struct PipelineStats {
  std::size_t eliminated = 0;    // unbounded quantifiers removed
  std::size_t sign_cases = 0;    // S' subsets kept while normalizing
  std::size_t div_cases = 0;     // (S-, S+) splits kept while eliminating
  std::size_t fresh_vars = 0;
};

// An equivalent of E y. f in which every quantifier is bounded.
Formula eliminate_exists(const Formula& f, const VarId& y, FreshVars& fresh,
                         PipelineStats* stats = nullptr);

struct PipelineOptions {
  SimplifyOptions simplify;
};

// Replaces every unbounded quantifier, innermost first; A y. f is handled as
// ~E y. ~f.
Formula bound_all_quantifiers(const Formula& f, const PipelineOptions& options = {},
                              PipelineStats* stats = nullptr);

// One elimination step on E y. body where body has bounded quantifiers only.
Formula eliminate_unbounded(const VarId& y, const Formula& body, FreshVars& fresh,
                            const PipelineOptions& options, PipelineStats* stats);

}  // namespace ppres
