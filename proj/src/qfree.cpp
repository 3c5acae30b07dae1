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

#include "ppres/qfree.hpp"

#include <set>

#include "ppres/eliminate.hpp"
#include "ppres/normalize.hpp"
#include "ppres/parser.hpp"

namespace ppres {
namespace {

void scan(const Formula& f, const std::string& path, std::multiset<VarId>& bound,
          EligibilityReport& report) {
  auto at = [&](std::size_t i) { return path.empty() ? std::to_string(i) : path + "." + std::to_string(i); };
  switch (f.kind()) {
    case FormulaKind::kDiv:
      if (!f.modulus().is_constant()) {
        report.violations.push_back({path, 1, f.modulus().to_string()});
      }
      [[fallthrough]];
    case FormulaKind::kLt:
    case FormulaKind::kEq:
      for (const auto& [v, c] : f.term().coeffs()) {
        if (!c.is_constant() && bound.contains(v)) {
          report.violations.push_back({path, 2, print_term(LinearTerm::Var(v, c))});
        }
      }
      return;
    default:
      break;
  }
  if (f.is_quantifier()) {
    auto it = bound.insert(f.var());
    scan(f.child(), at(0), bound, report);
    bound.erase(it);
    return;
  }
  for (std::size_t i = 0; i < f.children().size(); ++i) scan(f.children()[i], at(i), bound, report);
}

// E z <= a. p  ~>  E z. 0 <= z /\ z <= a /\ p, and dually for A.
Formula unbound(const Formula& f) {
  if (f.is_atom()) return f;
  std::vector<Formula> kids;
  for (const auto& k : f.children()) kids.push_back(unbound(k));
  if (!f.is_bounded_quantifier()) return f.with_children(std::move(kids));
  const LinearTerm z = LinearTerm::Var(f.var());
  const LinearTerm a(f.bound());
  if (f.kind() == FormulaKind::kBExists) {
    return Formula::Exists(f.var(), Formula::And({Formula::Le(0, z), Formula::Le(z, a), kids[0]}));
  }
  return Formula::Forall(f.var(), Formula::Or({Formula::Lt(z, 0), Formula::Lt(a, z), kids[0]}));
}

void check_expanded(const Formula& f, std::size_t limit) {
  if (f.is_quantifier()) {
    std::string why = "quantifier over '" + f.var().display() + "' survived elimination";
    if (f.is_bounded_quantifier()) {
      why += "; its range [0, " + f.bound().to_string() + "] exceeds the expansion limit " +
             std::to_string(limit);
    }
    throw ExpansionLimitError(why);
  }
  for (const auto& k : f.children()) check_expanded(k, limit);
}

}  // namespace

EligibilityReport qfree_eligible(const Formula& f) {
  EligibilityReport report;
  std::multiset<VarId> bound;
  scan(f, "", bound, report);
  report.eligible = report.violations.empty();
  return report;
}

std::string describe(const EligibilityViolation& v) {
  std::string where = v.location.empty() ? "root" : v.location;
  if (v.condition == 1) return "condition (1) at " + where + ": non-constant modulus " + v.offending;
  return "condition (2) at " + where + ": non-constant coefficient in " + v.offending;
}

IneligibleError::IneligibleError(EligibilityReport report)
    : Error(report.violations.empty() ? "formula is not eligible"
                                      : "formula is not eligible: " + describe(report.violations[0])),
      report_(std::move(report)) {}

Formula eliminate_to_qfree(const Formula& f, std::size_t limit) {
  EligibilityReport report = qfree_eligible(f);
  if (!report.eligible) throw IneligibleError(std::move(report));
  PipelineOptions options;
  options.simplify.expansion_limit = limit;
  Formula out = bound_all_quantifiers(unbound(f), options);
  check_expanded(out, limit);
  return out;
}

}  // namespace ppres
