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
#include <string>
#include <vector>

#include "ppres/ast.hpp"
#include "ppres/error.hpp"

namespace ppres {

struct EligibilityViolation {
  std::string location;   // path of child indices from the root, e.g. "0.1"
  int condition = 1;      // 1: non-constant modulus, 2: non-constant coefficient on a bound variable
  std::string offending;  // the modulus, or the scaled term
};

struct EligibilityReport {
  bool eligible = true;
  std::vector<EligibilityViolation> violations;
};

EligibilityReport qfree_eligible(const Formula& f);

class IneligibleError : public Error {
 public:
  explicit IneligibleError(EligibilityReport report);
  const EligibilityReport& report() const { return report_; }

 private:
  EligibilityReport report_;
};

// A quantifier-free equivalent with constant moduli. Throws IneligibleError,
// or ExpansionLimitError when a range to unroll has more than `limit` values.
Formula eliminate_to_qfree(const Formula& f, std::size_t limit = 1'000'000);

std::string describe(const EligibilityViolation& v);

}  // namespace ppres
