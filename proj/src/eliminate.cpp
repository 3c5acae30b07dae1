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

#include "ppres/eliminate.hpp"

#include <set>
#include <unordered_set>

#include "ppres/error.hpp"
#include "ppres/normalize.hpp"
#include "sign_patterns.hpp"

namespace ppres {
namespace {

enum class Basic { kUpper, kLower, kDiv, kFree };

// Shape of a literal in a formula normalized in y.
Basic basic_shape(const Formula& lit, const VarId& y) {
  const bool negated = lit.kind() == FormulaKind::kNot;
  const Formula& atom = negated ? lit.child() : lit;
  if (!atom.is_atom() || atom.kind() == FormulaKind::kTrue ||
      atom.kind() == FormulaKind::kFalse || !atom.term().mentions(y)) {
    return Basic::kFree;
  }
  const Polynomial c = atom.term().coeff(y);
  if (atom.kind() == FormulaKind::kLt && !negated) {
    if (c == Polynomial(1)) return Basic::kUpper;
    if (c == Polynomial(-1)) return Basic::kLower;
  }
  if (atom.kind() == FormulaKind::kDiv && c == Polynomial(1)) return Basic::kDiv;
  throw NotNormalizedError("formula is not normalized in '" + y.display() + "'");
}

template <typename Fn>
void for_each_literal(const Formula& f, Fn&& fn) {
  if (f.is_literal()) {
    fn(f);
    return;
  }
  if (f.kind() == FormulaKind::kExists || f.kind() == FormulaKind::kForall) {
    throw NotNormalizedError("unbounded quantifier inside a normalized formula");
  }
  for (const auto& k : f.children()) for_each_literal(k, fn);
}

}  // namespace

Formula phi_minus_infinity(const Formula& f, const VarId& y) {
  if (f.is_literal()) {
    switch (basic_shape(f, y)) {
      case Basic::kUpper:
        return Formula::True();
      case Basic::kLower:
        return Formula::False();
      default:
        return f;
    }
  }
  if (f.kind() == FormulaKind::kExists || f.kind() == FormulaKind::kForall) {
    throw NotNormalizedError("unbounded quantifier inside a normalized formula");
  }
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& k : f.children()) kids.push_back(phi_minus_infinity(k, y));
  return f.with_children(std::move(kids));
}

namespace {

void collect_bounds(const Formula& f, const VarId& y, FreshVars& fresh,
                    std::vector<BSetEntry>& out) {
  if (f.is_literal()) {
    if (basic_shape(f, y) == Basic::kLower) {
      // -y + b < 0
      out.push_back({f.term().without(y), {}});
    }
    return;
  }
  switch (f.kind()) {
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
      for (const auto& k : f.children()) collect_bounds(k, y, fresh, out);
      return;
    case FormulaKind::kBExists:
    case FormulaKind::kBForall: {
      std::vector<BSetEntry> inner;
      collect_bounds(f.child(), y, fresh, inner);
      const VarId& z = f.var();
      for (auto& e : inner) {
        if (!e.templ.mentions(z)) {
          out.push_back(std::move(e));
          continue;
        }
        VarId c = fresh.fresh("c");
        BSetEntry entry;
        entry.templ = e.templ.rename(z, c);
        entry.binders.emplace_back(c, f.bound());
        for (auto& b : e.binders) entry.binders.push_back(std::move(b));
        out.push_back(std::move(entry));
      }
      return;
    }
    default:
      throw NotNormalizedError("unbounded quantifier inside a normalized formula");
  }
}

}  // namespace

std::vector<BSetEntry> lower_bound_terms(const Formula& f, const VarId& y,
                                         FreshVars& fresh) {
  std::vector<BSetEntry> raw;
  collect_bounds(f, y, fresh, raw);
  std::vector<BSetEntry> out;
  std::unordered_set<std::size_t> seen;
  for (auto& e : raw) {
    if (e.binders.empty()) {
      if (!seen.insert(e.templ.hash()).second) {
        bool dup = false;
        for (const auto& o : out) {
          if (o.binders.empty() && o.templ == e.templ) dup = true;
        }
        if (dup) continue;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Polynomial> divisibility_moduli(const Formula& f, const VarId& y) {
  std::set<Polynomial> moduli;
  for_each_literal(f, [&](const Formula& lit) {
    if (basic_shape(lit, y) == Basic::kDiv) {
      const Formula& atom = lit.kind() == FormulaKind::kNot ? lit.child() : lit;
      moduli.insert(atom.modulus());
    }
  });
  return {moduli.begin(), moduli.end()};
}

std::vector<DivCaseSplit> case_splits_for(const std::vector<Polynomial>& moduli,
                                          bool prune) {
  using internal::SignClass;
  const std::vector<std::vector<SignClass>> options(
      moduli.size(), {SignClass::kZero, SignClass::kPositive, SignClass::kNegative});
  std::vector<DivCaseSplit> out;
  for (auto& pattern : internal::sign_patterns(moduli, options, prune)) {
    DivCaseSplit split;
    std::vector<Polynomial> factors;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (pattern.choice[i] == SignClass::kZero) continue;
      (pattern.choice[i] == SignClass::kPositive ? split.positive : split.negative).push_back(moduli[i]);
      factors.push_back(moduli[i]);
    }
    split.delta = product(factors);
    if (split.negative.size() % 2 == 1) split.delta = -split.delta;
    split.guard = std::move(pattern.guard);
    out.push_back(std::move(split));
  }
  return out;
}

std::vector<DivCaseSplit> divisibility_case_splits(const Formula& f, const VarId& y,
                                                   bool prune) {
  return case_splits_for(divisibility_moduli(f, y), prune);
}

Formula eliminate_exists(const Formula& f, const VarId& y, FreshVars& fresh,
                         PipelineStats* stats) {
  fresh.reserve_all(all_vars(f));
  const std::vector<DivCaseSplit> cases = divisibility_case_splits(f, y);
  const std::vector<BSetEntry> bset = lower_bound_terms(f, y, fresh);
  const Formula minus_inf = phi_minus_infinity(f, y);
  if (stats) stats->div_cases += cases.size();

  std::vector<Formula> disjuncts;
  for (const auto& split : cases) {
    const Polynomial last = split.delta - Polynomial(1);
    std::vector<Formula> options;

    // z in [1, delta] encoded as z' in [0, delta - 1] with z = z' + 1.
    VarId z = fresh.fresh("z");
    options.push_back(Formula::BExists(
        z, last,
        substitute(minus_inf, y, LinearTerm::Var(z) + LinearTerm(1), fresh)));

    if (bset.empty()) options.push_back(Formula::False());
    for (const auto& entry : bset) {
      VarId ze = fresh.fresh("z");
      const LinearTerm point = entry.templ + LinearTerm::Var(ze) + LinearTerm(1);
      Formula inner = Formula::BExists(ze, last, substitute(f, y, point, fresh));
      for (auto it = entry.binders.rbegin(); it != entry.binders.rend(); ++it) {
        inner = Formula::BExists(it->first, it->second, std::move(inner));
      }
      options.push_back(std::move(inner));
    }

    Formula body = Formula::Or(std::move(options));
    if (split.guard.kind() == FormulaKind::kTrue) {
      disjuncts.push_back(std::move(body));
    } else {
      disjuncts.push_back(Formula::And({split.guard, std::move(body)}));
    }
  }
  if (disjuncts.empty()) return Formula::False();
  return disjuncts.size() == 1 ? disjuncts[0] : Formula::Or(std::move(disjuncts));
}

Formula eliminate_unbounded(const VarId& y, const Formula& body, FreshVars& fresh,
                            const PipelineOptions& options, PipelineStats* stats) {
  Formula f = simplify(to_nnf(body), options.simplify);
  if (!occurs_free(f, y)) return f;
  NormalizedExists norm = normalize_in(f, y, fresh);
  if (stats) stats->sign_cases += norm.cases.size();
  Formula prepared = simplify(norm.body, options.simplify);
  Formula out = eliminate_exists(prepared, norm.var, fresh, stats);
  if (stats) ++stats->eliminated;
  return simplify(out, options.simplify);
}

namespace {

Formula bound_rec(const Formula& f, FreshVars& fresh, const PipelineOptions& options,
                  PipelineStats* stats) {
  if (f.is_atom()) return f;
  if (f.kind() == FormulaKind::kExists) {
    Formula body = bound_rec(f.child(), fresh, options, stats);
    return eliminate_unbounded(f.var(), body, fresh, options, stats);
  }
  if (f.kind() == FormulaKind::kForall) {
    Formula body = bound_rec(f.child(), fresh, options, stats);
    Formula e = eliminate_unbounded(f.var(), Formula::Not(body), fresh, options, stats);
    return simplify(to_nnf(Formula::Not(e)), options.simplify);
  }
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& k : f.children()) kids.push_back(bound_rec(k, fresh, options, stats));
  return f.with_children(std::move(kids));
}

}  // namespace

Formula bound_all_quantifiers(const Formula& f, const PipelineOptions& options,
                              PipelineStats* stats) {
  if (count_unbounded_quantifiers(f) == 0) return simplify(f, options.simplify);
  FreshVars fresh;
  Formula renamed = rename_bound(f, fresh);
  Formula out = simplify(bound_rec(renamed, fresh, options, stats), options.simplify);
  if (stats) stats->fresh_vars += fresh.issued();
  return out;
}

}  // namespace ppres
