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

#include "lemma_checks.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "ppres/error.hpp"
#include "ppres/normalize.hpp"
#include "ppres/oracle.hpp"
#include "ppres/parser.hpp"

namespace ppres::testing {
namespace {

constexpr std::uint64_t kEvalBudget = 200000;

void collect_innermost(const Formula& f, std::vector<ExistsInstance>& out) {
  if (f.kind() == FormulaKind::kExists || f.kind() == FormulaKind::kForall) {
    if (count_unbounded_quantifiers(f.child()) == 0) {
      Formula body = f.kind() == FormulaKind::kExists ? f.child() : to_nnf(Formula::Not(f.child()));
      out.push_back({f.var(), std::move(body)});
      return;
    }
  }
  for (const auto& k : f.children()) collect_innermost(k, out);
}

const DivCaseSplit* active_case(const PreparedInstance& p, std::uint64_t t) {
  for (const auto& c : p.cases) {
    if (evaluate(c.guard, t, {})) return &c;
  }
  return nullptr;
}

std::optional<std::int64_t> small(const BigInt& v) {
  if (v > BigInt(INT64_MAX / 4) || v < -BigInt(INT64_MAX / 4)) return std::nullopt;
  return static_cast<std::int64_t>(v);
}

// Values of every B-set entry over all binder instantiations.
std::optional<std::vector<std::int64_t>> bset_values(const PreparedInstance& p, std::uint64_t t,
                                                     Assignment env, std::size_t limit) {
  std::vector<std::int64_t> out;
  for (const auto& entry : p.bset) {
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
      if (i == entry.binders.size()) {
        auto v = small(eval_term(entry.templ, t, env));
        if (!v || out.size() >= limit) return false;
        out.push_back(*v);
        return true;
      }
      const auto& [var, bound] = entry.binders[i];
      auto b = small(bound.eval(t));
      if (!b) return false;
      for (std::int64_t c = 0; c <= *b; ++c) {
        env[var] = c;
        if (!rec(i + 1)) return false;
      }
      env.erase(var);
      return true;
    };
    if (!rec(0)) return std::nullopt;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Evaluates a grounded formula with y set to e.
class Probe {
 public:
  Probe(const Formula& f, const VarId& y, std::uint64_t t, const Assignment& params)
      : g_(ground(f, t)), y_(g_.slot_of(y)) {
    Assignment env = params;
    env[y] = 0;
    env_ = free_values(g_, env);
  }

  const GroundFormula& ground_formula() const { return g_; }
  int y_slot() const { return y_; }
  const std::vector<std::int64_t>& env() const { return env_; }

  std::optional<bool> operator()(std::int64_t e) {
    if (y_ >= 0) env_[y_] = e;
    return eval_bounded_within(g_, env_, kEvalBudget);
  }

 private:
  GroundFormula g_;
  int y_;
  std::vector<std::int64_t> env_;
};

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

// Largest |s| over order atoms y + s or -y + s, bounded variables ranging
// over their ranges.
__int128 term_bound(const GroundNode& n, int y, const std::vector<std::int64_t>& env,
                    std::vector<std::pair<int, std::int64_t>>& inner) {
  switch (n.kind) {
    case GroundKind::kLt:
    case GroundKind::kEq: {
      if (!n.term.mentions(y)) return 0;
      __int128 fixed = n.term.constant, spread = 0;
      for (std::size_t i = 0; i < n.term.coeffs.size(); ++i) {
        if (static_cast<int>(i) == y || n.term.coeffs[i] == 0) continue;
        if (i < env.size()) {
          fixed += static_cast<__int128>(n.term.coeffs[i]) * env[i];
          continue;
        }
        for (const auto& [slot, bound] : inner) {
          if (slot == static_cast<int>(i)) spread += abs128(n.term.coeffs[i]) * bound;
        }
      }
      return abs128(fixed) + spread;
    }
    case GroundKind::kBExists:
    case GroundKind::kBForall: {
      inner.emplace_back(n.var, std::max<std::int64_t>(n.number, 0));
      __int128 r = term_bound(*n.kids[0], y, env, inner);
      inner.pop_back();
      return r;
    }
    default: {
      __int128 r = 0;
      for (const auto& k : n.kids) r = std::max(r, term_bound(*k, y, env, inner));
      return r;
    }
  }
}

}  // namespace

std::vector<ExistsInstance> innermost_exists(const Formula& f) {
  std::vector<ExistsInstance> out;
  collect_innermost(f, out);
  return out;
}

PreparedInstance prepare(const ExistsInstance& inst) {
  FreshVars fresh;
  fresh.reserve(inst.y);
  fresh.reserve_all(all_vars(inst.body));
  Formula body = simplify(to_nnf(inst.body));
  NormalizedExists norm = normalize_in(body, inst.y, fresh);
  PreparedInstance p;
  p.y = norm.var;
  p.phi = simplify(norm.body);
  p.minus_inf = phi_minus_infinity(p.phi, p.y);
  p.cases = divisibility_case_splits(p.phi, p.y);
  p.bset = lower_bound_terms(p.phi, p.y, fresh);
  for (const auto& v : free_vars(p.phi)) {
    if (v != p.y) p.params.push_back(v);
  }
  return p;
}

bool check_boundary(const PreparedInstance& p, std::uint64_t t, const Assignment& params,
                    const LemmaConfig& config, BoundaryTally& tally) {
  try {
    const DivCaseSplit* c = active_case(p, t);
    if (!c) return false;
    auto delta = small(c->delta.eval(t));
    if (!delta || *delta <= 0 || *delta > config.max_delta) {
      ++tally.skipped;
      return false;
    }
    const std::int64_t d = *delta;
    auto bvals = bset_values(p, t, params, 100000);
    if (!bvals) {
      ++tally.skipped;
      return false;
    }
    const std::int64_t lo = (bvals->empty() ? -50 : bvals->front()) - 20;
    const std::int64_t hi = (bvals->empty() ? 50 : bvals->back()) + d + 20;
    if (hi - lo > config.dense_limit) {
      ++tally.skipped;
      return false;
    }
    Probe phi(p.phi, p.y, t, params);
    std::vector<char> truth;
    for (std::int64_t e = lo - d; e <= hi; ++e) {
      auto v = phi(e);
      if (!v) {
        ++tally.skipped;
        return false;
      }
      truth.push_back(*v);
    }
    ++tally.scans;
    for (std::int64_t e = lo; e <= hi; ++e) {
      if (!truth[e - (lo - d)] || truth[e - d - (lo - d)]) continue;
      ++tally.samples;
      // some b with e - delta <= b <= e - 1
      auto it = std::lower_bound(bvals->begin(), bvals->end(), e - d);
      if (it != bvals->end() && *it <= e - 1) continue;
      ++tally.violations;
      if (tally.first_violation.empty()) {
        tally.first_violation = print(p.phi) + " at t=" + std::to_string(t) +
                                " e=" + std::to_string(e);
      }
    }
    return true;
  } catch (const OverflowError&) {
    ++tally.skipped;
    return false;
  }
}

bool check_stability(const PreparedInstance& p, std::uint64_t t, const Assignment& params,
                     const LemmaConfig& config, std::mt19937_64& rng, StabilityTally& tally) {
  try {
    const DivCaseSplit* c = active_case(p, t);
    if (!c) return false;
    auto delta = small(c->delta.eval(t));
    if (!delta || *delta <= 0 || *delta > config.max_delta) {
      ++tally.skipped;
      return false;
    }
    const std::int64_t d = *delta;
    Probe phi(p.phi, p.y, t, params);
    Probe inf(p.minus_inf, p.y, t, params);
    std::vector<std::pair<int, std::int64_t>> inner;
    const __int128 k = phi.y_slot() < 0 ? 0
        : term_bound(*phi.ground_formula().root, phi.y_slot(), phi.env(), inner);
    const __int128 w = static_cast<__int128>(config.window_multiplier) * d * (1 + k);
    if (w > (static_cast<__int128>(1) << 60)) {
      ++tally.skipped;
      return false;
    }
    const std::int64_t window = static_cast<std::int64_t>(w);

    std::vector<std::int64_t> points;
    const std::int64_t dense = std::min(window, config.dense_limit);
    for (std::int64_t e = -dense; e <= 0; ++e) points.push_back(e);
    if (window > dense) {
      std::uniform_int_distribution<std::int64_t> deep(-window, -dense - 1);
      for (std::size_t i = 0; i < config.random_points; ++i) points.push_back(deep(rng));
      points.push_back(-window);
    }
    std::optional<std::int64_t> lowest;  // lowest disagreement
    for (std::int64_t e : points) {
      auto a = phi(e), b = inf(e);
      if (!a || !b) {
        ++tally.skipped;
        return false;
      }
      if (*a != *b && (!lowest || e < *lowest)) lowest = e;
    }
    ++tally.samples;
    const std::int64_t bottom = *std::min_element(points.begin(), points.end());
    if (lowest && *lowest == bottom) {
      ++tally.exhausted;
    } else if (lowest && static_cast<__int128>(*lowest) < -k) {
      ++tally.late;
      if (tally.first_failure.empty()) {
        tally.first_failure = print(p.phi) + " at t=" + std::to_string(t) +
                              ": disagreement at " + std::to_string(*lowest);
      }
    } else {
      ++tally.stabilized;
    }

    std::uniform_int_distribution<std::int64_t> anywhere(-window, window);
    for (int i = 0; i < 8; ++i) {
      const std::int64_t e = anywhere(rng);
      auto base = inf(e);
      if (!base) break;
      for (std::int64_t r = -3; r <= 3; ++r) {
        if (r == 0) continue;
        auto shifted = inf(e + r * d);
        if (!shifted) break;
        ++tally.shifts;
        if (*shifted != *base) {
          ++tally.periodicity_failures;
          if (tally.first_failure.empty()) {
            tally.first_failure = print(p.minus_inf) + " not periodic at t=" +
                                  std::to_string(t) + " e=" + std::to_string(e);
          }
        }
      }
    }
    return true;
  } catch (const OverflowError&) {
    ++tally.skipped;
    return false;
  }
}

}  // namespace ppres::testing
