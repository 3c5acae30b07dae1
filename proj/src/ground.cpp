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

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "ppres/error.hpp"
#include "ppres/oracle.hpp"

namespace ppres {

bool GroundTerm::is_constant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
}

int GroundFormula::slot_of(const VarId& v) const {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] == v) return static_cast<int>(i);
  }
  return -1;
}

namespace {

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("coefficient " + v.str() + " exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

class Grounder {
 public:
  Grounder(GroundFormula& g, std::uint64_t t) : g_(g), t_(t) {}

  int slot(const VarId& v) {
    int s = g_.slot_of(v);
    if (s >= 0) return s;
    g_.slots.push_back(v);
    return static_cast<int>(g_.slots.size() - 1);
  }

  void collect(const Formula& f) {
    if (f.is_quantifier()) slot(f.var());
    for (const auto& k : f.children()) collect(k);
  }

  GroundTerm term(const LinearTerm& lt) {
    GroundTerm out;
    out.coeffs.assign(g_.slots.size(), 0);
    for (const auto& [v, c] : lt.coeffs()) out.coeffs[g_.slot_of(v)] = to_int64(c.eval(t_));
    out.constant = to_int64(lt.constant().eval(t_));
    return out;
  }

  GroundPtr build(const Formula& f) {
    auto n = std::make_shared<GroundNode>();
    switch (f.kind()) {
      case FormulaKind::kTrue:
        n->kind = GroundKind::kTrue;
        break;
      case FormulaKind::kFalse:
        n->kind = GroundKind::kFalse;
        break;
      case FormulaKind::kLt:
        n->kind = GroundKind::kLt;
        n->term = term(f.term());
        break;
      case FormulaKind::kEq:
        n->kind = GroundKind::kEq;
        n->term = term(f.term());
        break;
      case FormulaKind::kDiv: {
        const std::int64_t m = to_int64(f.modulus().eval(t_));
        if (m == 0) {
          n->kind = GroundKind::kFalse;
          break;
        }
        if (m == std::numeric_limits<std::int64_t>::min()) throw OverflowError("modulus");
        n->kind = GroundKind::kDiv;
        n->number = m < 0 ? -m : m;
        n->term = term(f.term());
        break;
      }
      case FormulaKind::kNot:
      case FormulaKind::kAnd:
      case FormulaKind::kOr:
        n->kind = f.kind() == FormulaKind::kNot   ? GroundKind::kNot
                  : f.kind() == FormulaKind::kAnd ? GroundKind::kAnd
                                                  : GroundKind::kOr;
        for (const auto& k : f.children()) n->kids.push_back(build(k));
        break;
      case FormulaKind::kExists:
      case FormulaKind::kForall:
      case FormulaKind::kBExists:
      case FormulaKind::kBForall:
        n->kind = f.kind() == FormulaKind::kExists   ? GroundKind::kExists
                  : f.kind() == FormulaKind::kForall ? GroundKind::kForall
                  : f.kind() == FormulaKind::kBExists ? GroundKind::kBExists
                                                      : GroundKind::kBForall;
        n->var = g_.slot_of(f.var());
        if (f.is_bounded_quantifier()) n->number = to_int64(f.bound().eval(t_));
        n->kids.push_back(build(f.child()));
        break;
    }
    return n;
  }

 private:
  GroundFormula& g_;
  std::uint64_t t_;
};

__int128 value(const GroundTerm& term, const std::vector<std::int64_t>& env) {
  __int128 v = term.constant;
  for (std::size_t i = 0; i < term.coeffs.size(); ++i) {
    if (term.coeffs[i] != 0) v += static_cast<__int128>(term.coeffs[i]) * env[i];
  }
  return v;
}

bool atom_holds(const GroundNode& n, const std::vector<std::int64_t>& env) {
  switch (n.kind) {
    case GroundKind::kLt:
      return value(n.term, env) < 0;
    case GroundKind::kEq:
      return value(n.term, env) == 0;
    default:
      return value(n.term, env) % n.number == 0;
  }
}

__int128 floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

__int128 ceil_div(__int128 a, __int128 b) { return -floor_div(-a, b); }

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

struct OutOfBudget {};

class Evaluator {
 public:
  Evaluator(const GroundFormula& g, std::vector<std::int64_t> env, bool accelerate,
            std::uint64_t budget = 0)
      : g_(g), env_(std::move(env)), accelerate_(accelerate), budget_(budget) {
    env_.resize(g.slots.size(), 0);
  }

  bool eval(const GroundNode& n) {
    switch (n.kind) {
      case GroundKind::kTrue:
        return true;
      case GroundKind::kFalse:
        return false;
      case GroundKind::kLt:
      case GroundKind::kEq:
      case GroundKind::kDiv:
        return atom_holds(n, env_);
      case GroundKind::kNot:
        return !eval(*n.kids[0]);
      case GroundKind::kAnd:
        for (const auto& k : n.kids) {
          if (!eval(*k)) return false;
        }
        return true;
      case GroundKind::kOr:
        for (const auto& k : n.kids) {
          if (eval(*k)) return true;
        }
        return false;
      case GroundKind::kExists:
      case GroundKind::kForall:
        throw UnboundedQuantifierError("finite evaluation met an unbounded quantifier over '" +
                                       g_.slots[n.var].display() + "'");
      case GroundKind::kBExists:
      case GroundKind::kBForall:
        return bounded(n);
    }
    return false;
  }

 private:
  struct OrderAtom {
    const GroundNode* atom;
    std::vector<std::pair<int, std::int64_t>> inner;  // (slot, bound)
  };

  struct Plan {
    std::vector<OrderAtom> atoms;
    std::int64_t period = 1;  // 0 when it exceeds every useful range
  };

  static constexpr std::int64_t kLoop = 64;

  void analyze(const GroundNode& n, int z, std::vector<std::pair<int, std::int64_t>>& inner,
               Plan& plan) {
    switch (n.kind) {
      case GroundKind::kLt:
      case GroundKind::kEq:
        if (n.term.mentions(z)) {
          OrderAtom a{&n, {}};
          for (const auto& [s, b] : inner) {
            if (n.term.mentions(s)) a.inner.emplace_back(s, b);
          }
          plan.atoms.push_back(std::move(a));
        }
        return;
      case GroundKind::kDiv:
        if (n.term.mentions(z) && plan.period != 0) {
          const std::int64_t a = n.term.coeffs[z] < 0 ? -n.term.coeffs[z] : n.term.coeffs[z];
          const std::int64_t p = n.number / gcd64(n.number, a);
          const std::int64_t g = gcd64(plan.period, p);
          __int128 l = static_cast<__int128>(plan.period / g) * p;
          plan.period = l > (static_cast<__int128>(1) << 40) ? 0 : static_cast<std::int64_t>(l);
        }
        return;
      case GroundKind::kBExists:
      case GroundKind::kBForall:
        if (n.var == z) return;  // rebinds z; nothing inside depends on it
        inner.emplace_back(n.var, n.number < 0 ? 0 : n.number);
        analyze(*n.kids[0], z, inner, plan);
        inner.pop_back();
        return;
      default:
        for (const auto& k : n.kids) analyze(*k, z, inner, plan);
    }
  }

  const Plan& plan_for(const GroundNode& n) {
    auto it = plans_.find(&n);
    if (it != plans_.end()) return it->second;
    Plan plan;
    std::vector<std::pair<int, std::int64_t>> inner;
    analyze(*n.kids[0], n.var, inner, plan);
    return plans_.emplace(&n, std::move(plan)).first->second;
  }

  bool bounded(const GroundNode& n) {
    const bool exists = n.kind == GroundKind::kBExists;
    const std::int64_t b = n.number;
    if (b < 0) return !exists;
    const int z = n.var;
    const std::int64_t saved = env_[z];
    bool result = !exists;
    auto test = [&](std::int64_t v) {
      if (budget_ != 0 && ++spent_ > budget_) throw OutOfBudget{};
      env_[z] = v;
      if (eval(*n.kids[0]) == exists) {
        result = exists;
        return true;
      }
      return false;
    };
    if (!accelerate_ || b < kLoop) {
      for (std::int64_t v = 0; v <= b; ++v) {
        if (test(v)) break;
      }
      env_[z] = saved;
      return result;
    }

    const Plan& plan = plan_for(n);
    const __int128 end = static_cast<__int128>(b) + 1;
    std::vector<__int128> breaks{0, end};
    std::vector<std::pair<__int128, __int128>> dense;
    for (const auto& oa : plan.atoms) {
      const GroundTerm& term = oa.atom->term;
      const __int128 a = term.coeffs[z];
      __int128 s = term.constant;
      for (std::size_t i = 0; i < term.coeffs.size(); ++i) {
        if (static_cast<int>(i) == z || term.coeffs[i] == 0) continue;
        bool is_inner = false;
        for (const auto& [slot, bound] : oa.inner) is_inner |= slot == static_cast<int>(i);
        if (!is_inner) s += static_cast<__int128>(term.coeffs[i]) * env_[i];
      }
      __int128 smin = s, smax = s;
      for (const auto& [slot, bound] : oa.inner) {
        const __int128 c = static_cast<__int128>(term.coeffs[slot]) * bound;
        if (c < 0) smin += c; else smax += c;
      }
      __int128 p, q;  // truth is constant below p and from q on
      if (oa.atom->kind == GroundKind::kLt) {
        if (a > 0) {
          p = ceil_div(-smax, a);
          q = ceil_div(-smin, a);
        } else {
          p = floor_div(smin, -a) + 1;
          q = floor_div(smax, -a) + 1;
        }
      } else {
        // a z + s = 0 only for z between -smax / a and -smin / a
        __int128 lo = a > 0 ? ceil_div(-smax, a) : ceil_div(smin, -a);
        __int128 hi = a > 0 ? floor_div(-smin, a) : floor_div(smax, -a);
        if (lo > hi) continue;
        p = lo;
        q = hi + 1;
      }
      breaks.push_back(p);
      breaks.push_back(q);
      if (p < q && (oa.atom->kind == GroundKind::kEq || smin != smax)) dense.emplace_back(p, q);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const __int128 u = std::max<__int128>(breaks[i], 0);
      const __int128 v = std::min(breaks[i + 1], end);
      if (u >= v) continue;
      bool full = plan.period == 0;
      for (const auto& [dp, dq] : dense) full |= dp <= u && v <= dq;
      const __int128 len = v - u;
      const __int128 count = full ? len : std::min<__int128>(len, plan.period);
      bool done = false;
      for (__int128 k = 0; k < count; ++k) {
        if (test(static_cast<std::int64_t>(u + k))) {
          done = true;
          break;
        }
      }
      if (done) break;
    }
    env_[z] = saved;
    return result;
  }

  const GroundFormula& g_;
  std::vector<std::int64_t> env_;
  bool accelerate_;
  std::uint64_t budget_ = 0;
  std::uint64_t spent_ = 0;
  std::unordered_map<const GroundNode*, Plan> plans_;
};

}  // namespace

GroundFormula ground(const Formula& f, std::uint64_t t) {
  GroundFormula g;
  g.t = t;
  for (const auto& v : free_vars(f)) g.slots.push_back(v);
  g.free_count = g.slots.size();
  Grounder grounder(g, t);
  grounder.collect(f);
  g.root = grounder.build(f);
  return g;
}

std::vector<std::int64_t> free_values(const GroundFormula& g, const Assignment& env) {
  std::vector<std::int64_t> out;
  out.reserve(g.free_count);
  for (std::size_t i = 0; i < g.free_count; ++i) {
    auto it = env.find(g.slots[i]);
    if (it == env.end()) throw MissingBindingError(g.slots[i].display());
    out.push_back(to_int64(it->second));
  }
  return out;
}

bool eval_qfree(const GroundNode& n, const std::vector<std::int64_t>& env) {
  switch (n.kind) {
    case GroundKind::kTrue:
      return true;
    case GroundKind::kFalse:
      return false;
    case GroundKind::kLt:
    case GroundKind::kEq:
    case GroundKind::kDiv:
      return atom_holds(n, env);
    case GroundKind::kNot:
      return !eval_qfree(*n.kids[0], env);
    case GroundKind::kAnd:
      for (const auto& k : n.kids) {
        if (!eval_qfree(*k, env)) return false;
      }
      return true;
    case GroundKind::kOr:
      for (const auto& k : n.kids) {
        if (eval_qfree(*k, env)) return true;
      }
      return false;
    default:
      throw Error("eval_qfree: formula has a quantifier");
  }
}

bool eval_bounded(const GroundFormula& g, std::vector<std::int64_t> free_env) {
  Evaluator e(g, std::move(free_env), true);
  return e.eval(*g.root);
}

std::optional<bool> eval_bounded_within(const GroundFormula& g, std::vector<std::int64_t> free_env,
                                        std::uint64_t budget) {
  Evaluator e(g, std::move(free_env), true, budget);
  try {
    return e.eval(*g.root);
  } catch (const OutOfBudget&) {
    return std::nullopt;
  }
}

bool eval_bounded_naive(const GroundFormula& g, std::vector<std::int64_t> free_env) {
  Evaluator e(g, std::move(free_env), false);
  return e.eval(*g.root);
}

bool eval_bounded(const Formula& f, std::uint64_t t, const Assignment& env) {
  if (count_unbounded_quantifiers(f) != 0) {
    throw UnboundedQuantifierError("eval_bounded: formula has unbounded quantifiers");
  }
  GroundFormula g = ground(f, t);
  return eval_bounded(g, free_values(g, env));
}

}  // namespace ppres
