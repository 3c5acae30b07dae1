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

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>

#include "ppres/ast.hpp"

namespace ppres {

// Concrete syntax:
//
//   formula := formula "\/" formula | formula "/\" formula | "~" formula
//            | ("E"|"A") var "." formula | ("Eb"|"Ab") var "<=" poly "." formula
//            | "(" formula ")" | atom
//   atom    := term (("<"|"<="|"="|"!="|">"|">=") term)+ | "D[" poly "](" term ")"
//   term    := sums and differences of products; a product may hold at most
//              one variable, e.g. "2*y", "(2t)*z", "t^2 x", "-(t - 1)*x + 3"
//
// `~` binds tighter than `/\`, which binds tighter than `\/`; a quantifier
// body extends as far right as possible. `#` starts a comment that runs to
// the end of the line. `t` is the parameter and cannot name a variable.
struct ParseOptions {
  // When set, any free variable outside this set is rejected.
  std::optional<std::set<std::string>> declared_free;
};

Formula parse_formula(std::string_view text, const ParseOptions& options = {});
LinearTerm parse_term(std::string_view text);
Polynomial parse_polynomial(std::string_view text);

std::string print(const Formula& f);
std::string print_term(const LinearTerm& term);

std::ostream& operator<<(std::ostream& os, const Formula& f);
std::ostream& operator<<(std::ostream& os, const LinearTerm& term);

struct SourceFormula {
  std::string text;
  std::string origin;  // file name or "<inline>"
  Formula formula;
};

SourceFormula load_source(const std::string& path,
                          const ParseOptions& options = {});
SourceFormula inline_source(std::string text, const ParseOptions& options = {});

}  // namespace ppres
