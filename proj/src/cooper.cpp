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
#include <numeric>

#include "ppres/error.hpp"
#include "ppres/oracle.hpp"

namespace ppres {
namespace {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit overflow in oracle");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit overflow in oracle");
  return r;
}

std::int64_t abs64(std::int64_t a) { return a < 0 ? mul(a, -1) : a; }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return mul(a / std::gcd(a, b), b); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Residue in (-m/2, m/2].
std::int64_t sym_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  if (r < 0) r += m;
  if (r > m / 2) r -= m;
  return r;
}

GroundTerm scaled(const GroundTerm& t, std::int64_t k) {
  GroundTerm out = t;
  for (auto& c : out.coeffs) c = mul(c, k);
  out.constant = mul(out.constant, k);
  return out;
}

GroundTerm negated(const GroundTerm& t) { return scaled(t, -1); }

GroundTerm plus(GroundTerm a, const GroundTerm& b) {
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] = add(a.coeffs[i], b.coeffs[i]);
  a.constant = add(a.constant, b.constant);
  return a;
}

GroundTerm substituted(const GroundTerm& t, int slot, const GroundTerm& s) {
  const std::int64_t c = t.coeffs[slot];
  if (c == 0) return t;
  GroundTerm out = t;
  out.coeffs[slot] = 0;
  return plus(std::move(out), scaled(s, c));
}

GroundTerm constant_term(std::size_t slots, std::int64_t k) {
  GroundTerm out;
  out.coeffs.assign(slots, 0);
  out.constant = k;
  return out;
}

GroundPtr make(GroundKind kind) {
  auto n = std::make_shared<GroundNode>();
  n->kind = kind;
  return n;
}

const GroundPtr& true_node() {
  static const GroundPtr n = make(GroundKind::kTrue);
  return n;
}

const GroundPtr& false_node() {
  static const GroundPtr n = make(GroundKind::kFalse);
  return n;
}

GroundPtr constant(bool v) { return v ? true_node() : false_node(); }

GroundPtr raw_atom(GroundKind kind, GroundTerm term, std::int64_t number = 0) {
  auto n = std::make_shared<GroundNode>();
  n->kind = kind;
  n->term = std::move(term);
  n->number = number;
  return n;
}

// Folds constant atoms and divides out common factors.
GroundPtr atom(GroundKind kind, GroundTerm term, std::int64_t number = 0) {
  if (kind == GroundKind::kDiv) {
    if (number == 1) return true_node();
    for (auto& c : term.coeffs) c = sym_mod(c, number);
    term.constant = sym_mod(term.constant, number);
  }
  std::int64_t g = 0;
  for (auto c : term.coeffs) g = std::gcd(g, c);
  if (g == 0) {
    switch (kind) {
      case GroundKind::kLt:
        return constant(term.constant < 0);
      case GroundKind::kEq:
        return constant(term.constant == 0);
      default:
        return constant(term.constant % number == 0);
    }
  }
  if (kind == GroundKind::kDiv) g = std::gcd(g, number);
  if (g > 1) {
    if (kind == GroundKind::kLt) {
      term.constant = floor_div(term.constant, g);
    } else {
      if (term.constant % g != 0) return false_node();
      term.constant /= g;
    }
    for (auto& c : term.coeffs) c /= g;
    if (kind == GroundKind::kDiv) {
      number /= g;
      if (number == 1) return true_node();
    }
  }
  return raw_atom(kind, std::move(term), number);
}

GroundPtr negation(const GroundPtr& f) {
  if (f->kind == GroundKind::kTrue) return false_node();
  if (f->kind == GroundKind::kFalse) return true_node();
  if (f->kind == GroundKind::kNot) return f->kids[0];
  auto n = make(GroundKind::kNot);
  std::const_pointer_cast<GroundNode>(n)->kids.push_back(f);
  return n;
}

GroundPtr junction(GroundKind kind, const std::vector<GroundPtr>& kids) {
  const GroundKind unit = kind == GroundKind::kAnd ? GroundKind::kTrue : GroundKind::kFalse;
  const GroundKind zero = kind == GroundKind::kAnd ? GroundKind::kFalse : GroundKind::kTrue;
  auto n = std::make_shared<GroundNode>();
  n->kind = kind;
  for (const auto& k : kids) {
    if (k->kind == unit) continue;
    if (k->kind == zero) return k;
    if (k->kind == kind) {
      n->kids.insert(n->kids.end(), k->kids.begin(), k->kids.end());
    } else {
      n->kids.push_back(k);
    }
  }
  if (n->kids.empty()) return constant(unit == GroundKind::kTrue);
  if (n->kids.size() == 1) return n->kids[0];
  return n;
}

GroundPtr with_kids(const GroundNode& n, std::vector<GroundPtr> kids) {
  if (n.kind == GroundKind::kAnd || n.kind == GroundKind::kOr) return junction(n.kind, kids);
  if (n.kind == GroundKind::kNot) return negation(kids[0]);
  auto out = std::make_shared<GroundNode>(n);
  out->kids = std::move(kids);
  return out;
}

// Replaces slot by s in a quantifier-free formula and folds constants.
GroundPtr subst(const GroundPtr& f, int slot, const GroundTerm& s) {
  switch (f->kind) {
    case GroundKind::kTrue:
    case GroundKind::kFalse:
      return f;
    case GroundKind::kLt:
    case GroundKind::kEq:
    case GroundKind::kDiv:
      if (!f->term.mentions(slot)) return f;
      return atom(f->kind, substituted(f->term, slot, s), f->number);
    default: {
      std::vector<GroundPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(subst(k, slot, s));
      return with_kids(*f, std::move(kids));
    }
  }
}

bool mentions(const GroundPtr& f, int slot) {
  if (f->kind == GroundKind::kLt || f->kind == GroundKind::kEq || f->kind == GroundKind::kDiv) {
    return f->term.mentions(slot);
  }
  return std::any_of(f->kids.begin(), f->kids.end(),
                     [&](const GroundPtr& k) { return mentions(k, slot); });
}

// Negation normal form for eliminating y: negations only on D atoms, and no
// equations in y.
GroundPtr nnf(const GroundPtr& f, int y, bool negate) {
  switch (f->kind) {
    case GroundKind::kTrue:
    case GroundKind::kFalse:
      return constant((f->kind == GroundKind::kTrue) != negate);
    case GroundKind::kLt:
      return negate ? atom(GroundKind::kLt, plus(negated(f->term), constant_term(f->term.coeffs.size(), -1)))
                    : f;
    case GroundKind::kEq: {
      if (!f->term.mentions(y)) return negate ? negation(f) : f;
      const std::size_t n = f->term.coeffs.size();
      GroundPtr below = atom(GroundKind::kLt, f->term);
      GroundPtr above = atom(GroundKind::kLt, negated(f->term));
      if (negate) return junction(GroundKind::kOr, {below, above});
      return junction(GroundKind::kAnd,
                      {atom(GroundKind::kLt, plus(f->term, constant_term(n, -1))),
                       atom(GroundKind::kLt, plus(negated(f->term), constant_term(n, -1)))});
    }
    case GroundKind::kDiv:
      return negate ? negation(f) : f;
    case GroundKind::kNot:
      return nnf(f->kids[0], y, !negate);
    case GroundKind::kAnd:
    case GroundKind::kOr: {
      GroundKind kind = f->kind;
      if (negate) kind = kind == GroundKind::kAnd ? GroundKind::kOr : GroundKind::kAnd;
      std::vector<GroundPtr> kids;
      for (const auto& k : f->kids) kids.push_back(nnf(k, y, negate));
      return junction(kind, kids);
    }
    default:
      throw Error("cooper: quantifier in a quantifier-free position");
  }
}

struct Setup {
  GroundPtr body;   // coefficient of y is -1, 0 or 1 in every atom
  GroundPtr inf;    // body at -infinity (or +infinity when `upward`)
  std::vector<GroundTerm> bounds;
  std::int64_t delta = 1;
  bool upward = false;  // test points a - j instead of b + j
};

std::int64_t unify_lcm(const GroundPtr& f, int y) {
  if (f->kind == GroundKind::kLt || f->kind == GroundKind::kDiv) {
    return f->term.mentions(y) ? abs64(f->term.coeffs[y]) : 1;
  }
  std::int64_t l = 1;
  for (const auto& k : f->kids) l = lcm64(l, unify_lcm(k, y));
  return l;
}

GroundPtr unify(const GroundPtr& f, int y, std::int64_t l) {
  if (f->kind == GroundKind::kLt || f->kind == GroundKind::kDiv) {
    if (!f->term.mentions(y)) return f;
    const std::int64_t c = f->term.coeffs[y];
    const std::int64_t k = l / abs64(c);
    GroundTerm term = scaled(f->term, k);
    term.coeffs[y] = c > 0 ? 1 : -1;
    if (f->kind == GroundKind::kDiv && c < 0) term = negated(term);
    return raw_atom(f->kind, std::move(term), f->kind == GroundKind::kDiv ? mul(f->number, k) : 0);
  }
  if (f->kids.empty()) return f;
  std::vector<GroundPtr> kids;
  for (const auto& k : f->kids) kids.push_back(unify(k, y, l));
  return with_kids(*f, std::move(kids));
}

void collect(const GroundPtr& f, int y, std::vector<GroundTerm>& lower,
             std::vector<GroundTerm>& upper, std::int64_t& delta) {
  if (f->kind == GroundKind::kLt && f->term.mentions(y)) {
    GroundTerm rest = f->term;
    rest.coeffs[y] = 0;
    if (f->term.coeffs[y] < 0) {
      lower.push_back(std::move(rest));  // rest < y
    } else {
      upper.push_back(negated(rest));  // y < -rest
    }
    return;
  }
  if (f->kind == GroundKind::kDiv && f->term.mentions(y)) {
    delta = lcm64(delta, f->number);
    return;
  }
  for (const auto& k : f->kids) collect(k, y, lower, upper, delta);
}

GroundPtr at_infinity(const GroundPtr& f, int y, bool upward) {
  if (f->kind == GroundKind::kLt && f->term.mentions(y)) {
    return constant((f->term.coeffs[y] > 0) != upward);
  }
  if (f->kids.empty()) return f;
  std::vector<GroundPtr> kids;
  for (const auto& k : f->kids) kids.push_back(at_infinity(k, y, upward));
  return with_kids(*f, std::move(kids));
}

void dedupe(std::vector<GroundTerm>& terms) {
  auto key = [](const GroundTerm& t) { return std::make_pair(t.coeffs, t.constant); };
  std::sort(terms.begin(), terms.end(),
            [&](const GroundTerm& a, const GroundTerm& b) { return key(a) < key(b); });
  terms.erase(std::unique(terms.begin(), terms.end(),
                          [&](const GroundTerm& a, const GroundTerm& b) { return key(a) == key(b); }),
              terms.end());
}

std::size_t slot_count(const GroundPtr& f) {
  if (f->kind == GroundKind::kLt || f->kind == GroundKind::kEq || f->kind == GroundKind::kDiv) {
    return f->term.coeffs.size();
  }
  for (const auto& k : f->kids) {
    if (std::size_t n = slot_count(k)) return n;
  }
  return 0;
}

// Returns nullopt when y does not occur in the body.
std::optional<Setup> prepare(const GroundPtr& body, int y) {
  GroundPtr f = nnf(body, y, false);
  if (!mentions(f, y)) return std::nullopt;
  const std::int64_t l = unify_lcm(f, y);
  f = unify(f, y, l);
  Setup s;
  std::vector<GroundTerm> lower, upper;
  collect(f, y, lower, upper, s.delta);
  s.delta = lcm64(s.delta, l);
  if (l > 1) {
    GroundTerm yt = constant_term(slot_count(f), 0);
    yt.coeffs[y] = 1;
    f = junction(GroundKind::kAnd, {f, raw_atom(GroundKind::kDiv, std::move(yt), l)});
  }
  dedupe(lower);
  dedupe(upper);
  s.upward = upper.size() < lower.size();
  s.bounds = s.upward ? std::move(upper) : std::move(lower);
  s.inf = at_infinity(f, y, s.upward);
  s.body = std::move(f);
  return s;
}

GroundPtr eliminate(int y, const GroundPtr& body) {
  std::optional<Setup> s = prepare(body, y);
  if (!s) return body;
  const std::size_t n = slot_count(s->body);
  const std::int64_t sign = s->upward ? -1 : 1;
  std::vector<GroundPtr> parts;
  for (std::int64_t j = 1; j <= s->delta; ++j) {
    parts.push_back(subst(s->inf, y, constant_term(n, sign * j)));
    if (parts.back()->kind == GroundKind::kTrue) return true_node();
  }
  for (const auto& b : s->bounds) {
    for (std::int64_t j = 1; j <= s->delta; ++j) {
      GroundTerm point = b;
      point.constant = add(point.constant, sign * j);
      parts.push_back(subst(s->body, y, point));
      if (parts.back()->kind == GroundKind::kTrue) return true_node();
    }
  }
  return junction(GroundKind::kOr, parts);
}

GroundPtr range_guard(std::size_t n, int y, std::int64_t bound) {
  GroundTerm lo = constant_term(n, -1);  // -y - 1 < 0
  lo.coeffs[y] = -1;
  GroundTerm hi = constant_term(n, -bound - 1);  // y - bound - 1 < 0
  hi.coeffs[y] = 1;
  return junction(GroundKind::kAnd, {raw_atom(GroundKind::kLt, lo), raw_atom(GroundKind::kLt, hi)});
}

GroundPtr qe(const GroundPtr& f, std::size_t n) {
  switch (f->kind) {
    case GroundKind::kTrue:
    case GroundKind::kFalse:
      return f;
    case GroundKind::kLt:
    case GroundKind::kEq:
    case GroundKind::kDiv:
      return atom(f->kind, f->term, f->number);
    case GroundKind::kNot:
    case GroundKind::kAnd:
    case GroundKind::kOr: {
      std::vector<GroundPtr> kids;
      for (const auto& k : f->kids) kids.push_back(qe(k, n));
      return with_kids(*f, std::move(kids));
    }
    case GroundKind::kExists:
      return eliminate(f->var, qe(f->kids[0], n));
    case GroundKind::kForall:
      return negation(eliminate(f->var, negation(qe(f->kids[0], n))));
    case GroundKind::kBExists:
    case GroundKind::kBForall: {
      const bool exists = f->kind == GroundKind::kBExists;
      const std::int64_t b = f->number;
      if (b < 0) return constant(!exists);
      GroundPtr body = qe(f->kids[0], n);
      if (b <= kExpandBound) {
        std::vector<GroundPtr> parts;
        for (std::int64_t v = 0; v <= b; ++v) {
          GroundPtr p = subst(body, f->var, constant_term(n, v));
          if (!exists) p = negation(p);
          parts.push_back(std::move(p));
        }
        GroundPtr any = junction(GroundKind::kOr, parts);
        return exists ? any : negation(any);
      }
      GroundPtr inner = exists ? body : negation(body);
      GroundPtr any = eliminate(f->var, junction(GroundKind::kAnd, {range_guard(n, f->var, b), inner}));
      return exists ? any : negation(any);
    }
  }
  return f;
}

class Decider {
 public:
  Decider(const GroundFormula& g, std::vector<std::int64_t> env)
      : n_(g.slots.size()), env_(std::move(env)), assigned_(g.slots.size(), false) {
    env_.resize(n_, 0);
    for (std::size_t i = 0; i < g.free_count; ++i) assigned_[i] = true;
  }

  bool decide(const GroundPtr& f) {
    switch (f->kind) {
      case GroundKind::kTrue:
        return true;
      case GroundKind::kFalse:
        return false;
      case GroundKind::kLt:
      case GroundKind::kEq:
      case GroundKind::kDiv:
        return eval_qfree(*f, env_);
      case GroundKind::kNot:
        return !decide(f->kids[0]);
      case GroundKind::kAnd:
        for (const auto& k : f->kids) {
          if (!decide(k)) return false;
        }
        return true;
      case GroundKind::kOr:
        for (const auto& k : f->kids) {
          if (decide(k)) return true;
        }
        return false;
      case GroundKind::kBExists:
      case GroundKind::kBForall:
        if (f->number <= kExpandBound) return small_range(f);
        [[fallthrough]];
      case GroundKind::kExists:
      case GroundKind::kForall:
        return quantifier(f);
    }
    return false;
  }

 private:
  bool small_range(const GroundPtr& f) {
    const bool exists = f->kind == GroundKind::kBExists;
    const int y = f->var;
    const std::int64_t saved = env_[y];
    const bool was = assigned_[y];
    assigned_[y] = true;
    bool result = !exists;
    for (std::int64_t v = 0; v <= f->number; ++v) {
      env_[y] = v;
      if (decide(f->kids[0]) == exists) {
        result = exists;
        break;
      }
    }
    env_[y] = saved;
    assigned_[y] = was;
    return result;
  }

  // Replaces every assigned slot except those rebound inside.
  GroundPtr instantiate(const GroundPtr& f, std::vector<bool>& live) {
    switch (f->kind) {
      case GroundKind::kTrue:
      case GroundKind::kFalse:
        return f;
      case GroundKind::kLt:
      case GroundKind::kEq:
      case GroundKind::kDiv: {
        GroundTerm term = f->term;
        for (std::size_t i = 0; i < n_; ++i) {
          if (live[i] && term.coeffs[i] != 0) {
            term.constant = add(term.constant, mul(term.coeffs[i], env_[i]));
            term.coeffs[i] = 0;
          }
        }
        return atom(f->kind, std::move(term), f->number);
      }
      case GroundKind::kNot:
      case GroundKind::kAnd:
      case GroundKind::kOr: {
        std::vector<GroundPtr> kids;
        for (const auto& k : f->kids) kids.push_back(instantiate(k, live));
        return with_kids(*f, std::move(kids));
      }
      default: {
        const bool was = live[f->var];
        live[f->var] = false;
        GroundPtr body = instantiate(f->kids[0], live);
        live[f->var] = was;
        return with_kids(*f, {std::move(body)});
      }
    }
  }

  bool quantifier(const GroundPtr& f) {
    const int y = f->var;
    const bool exists = f->kind == GroundKind::kExists || f->kind == GroundKind::kBExists;
    std::vector<bool> live = assigned_;
    live[y] = false;
    GroundPtr body = qe(instantiate(f->kids[0], live), n_);
    if (!exists) body = negation(body);
    if (f->kind == GroundKind::kBExists || f->kind == GroundKind::kBForall) {
      if (f->number < 0) return !exists;
      body = junction(GroundKind::kAnd, {range_guard(n_, y, f->number), body});
    }
    std::optional<Setup> s = prepare(body, y);
    bool found;
    if (!s) {
      found = eval_qfree(*body, env_);
    } else {
      found = false;
      const std::int64_t sign = s->upward ? -1 : 1;
      std::vector<std::int64_t> env(n_, 0);
      for (std::int64_t j = 1; j <= s->delta && !found; ++j) {
        env[y] = sign * j;
        found = eval_qfree(*s->inf, env);
      }
      for (const auto& b : s->bounds) {
        if (found) break;
        for (std::int64_t j = 1; j <= s->delta && !found; ++j) {
          env[y] = add(b.constant, sign * j);
          found = eval_qfree(*s->body, env);
        }
      }
    }
    return exists ? found : !found;
  }

  std::size_t n_;
  std::vector<std::int64_t> env_;
  std::vector<bool> assigned_;
};

}  // namespace

GroundPtr cooper_eliminate(const GroundFormula& g, int slot, const GroundPtr& body) {
  (void)g;
  return eliminate(slot, body);
}

GroundPtr cooper_qe(const GroundFormula& g) { return qe(g.root, g.slots.size()); }

bool classical_cooper_decide(const GroundFormula& g, std::vector<std::int64_t> free_env) {
  Decider d(g, std::move(free_env));
  return d.decide(g.root);
}

bool classical_cooper_decide(const GroundFormula& g, const Assignment& env) {
  return classical_cooper_decide(g, free_values(g, env));
}

}  // namespace ppres
