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

// Enumeration of sign conditions on polynomials in t that hold together for
// some t in N.

#pragma once

#include <vector>

#include "ppres/ast.hpp"

namespace ppres::internal {

enum class SignClass { kNegative, kZero, kPositive, kNonzero };

struct SignPattern {
  std::vector<SignClass> choice;  // one per polynomial
  Formula guard;                  // t-only; conjuncts true for every t are left out
};

// Every combination of options[i] for ps[i], in lexicographic order of option
// indices. With `prune`, combinations no t in N satisfies are dropped.
std::vector<SignPattern> sign_patterns(const std::vector<Polynomial>& ps,
                                       const std::vector<std::vector<SignClass>>& options,
                                       bool prune);

}  // namespace ppres::internal
