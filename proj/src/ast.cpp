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

#include "ppres/ast.hpp"

#include <functional>
#include <utility>

#include "ppres/error.hpp"

namespace ppres {
namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_var(const VarId& v) {
  return mix(std::hash<std::string>{}(v.name), v.serial);
}

}  // namespace

std::string VarId::display() const {
  return serial == 0 ? name : name + "_" + std::to_string(serial);
}

VarId FreshVars::fresh(std::string_view base) {
  for (;;) {
    VarId v{std::string(base), next_++};
    if (used_.insert(v.display()).second) {
      ++issued_;
      return v;
    }
  }
}

// ---------------------------------------------------------------------------
// LinearTerm

LinearTerm LinearTerm::Var(const VarId& v, Polynomial coeff) {
  LinearTerm t;
  if (!coeff.is_zero()) t.coeffs_.emplace(v, std::move(coeff));
  return t;
}

Polynomial LinearTerm::coeff(const VarId& v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Polynomial() : it->second;
}

LinearTerm LinearTerm::without(const VarId& v) const {
  LinearTerm r = *this;
  r.coeffs_.erase(v);
  return r;
}

LinearTerm LinearTerm::substitute(const VarId& v,
                                  const LinearTerm& replacement) const {
  auto it = coeffs_.find(v);
  if (it == coeffs_.end()) return *this;
  LinearTerm r = without(v);
  r += replacement * it->second;
  return r;
}

LinearTerm LinearTerm::rename(const VarId& from, const VarId& to) const {
  return substitute(from, Var(to));
}

LinearTerm LinearTerm::operator-() const {
  LinearTerm r = *this;
  for (auto& [v, c] : r.coeffs_) c = -c;
  r.constant_ = -r.constant_;
  return r;
}

LinearTerm& LinearTerm::operator+=(const LinearTerm& other) {
  for (const auto& [v, c] : other.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(v, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  constant_ += other.constant_;
  return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& other) {
  return *this += -other;
}

LinearTerm& LinearTerm::operator*=(const Polynomial& scale) {
  if (scale.is_zero()) {
    coeffs_.clear();
    constant_ = Polynomial();
    return *this;
  }
  for (auto& [v, c] : coeffs_) c *= scale;
  constant_ *= scale;
  return *this;
}

std::size_t LinearTerm::hash() const {
  std::size_t h = constant_.hash();
  for (const auto& [v, c] : coeffs_) h = mix(mix(h, hash_var(v)), c.hash());
  return h;
}

LinearTerm normalize_term(const SynTerm& term) {
  struct Visitor {
    LinearTerm operator()(const SynTerm::Zero&) const { return LinearTerm(); }
    LinearTerm operator()(const SynTerm::One&) const { return LinearTerm(1); }
    LinearTerm operator()(const SynTerm::Var& v) const {
      return LinearTerm::Var(v.var);
    }
    LinearTerm operator()(const SynTerm::Add& a) const {
      return normalize_term(*a.lhs) + normalize_term(*a.rhs);
    }
    LinearTerm operator()(const SynTerm::Sub& s) const {
      return normalize_term(*s.lhs) - normalize_term(*s.rhs);
    }
    LinearTerm operator()(const SynTerm::Neg& n) const {
      return -normalize_term(*n.arg);
    }
    LinearTerm operator()(const SynTerm::Scale& s) const {
      return normalize_term(*s.arg) * s.alpha;
    }
  };
  return std::visit(Visitor{}, term.node);
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  FormulaKind kind = FormulaKind::kTrue;
  LinearTerm term;
  Polynomial poly;
  VarId var;
  std::vector<Formula> kids;
  std::size_t hash = 0;
};

Formula Formula::make(Node node) {
  std::size_t h = static_cast<std::size_t>(node.kind) * 0x100000001b3ULL;
  h = mix(h, node.term.hash());
  h = mix(h, node.poly.hash());
  if (node.kind >= FormulaKind::kExists) h = mix(h, hash_var(node.var));
  for (const auto& k : node.kids) h = mix(h, k.hash());
  node.hash = h;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula::Formula() : Formula(True()) {}

Formula Formula::True() {
  static const Formula f = make(Node{FormulaKind::kTrue});
  return f;
}

Formula Formula::False() {
  static const Formula f = make(Node{FormulaKind::kFalse});
  return f;
}

Formula Formula::Lt(const LinearTerm& lhs, const LinearTerm& rhs) {
  return LtZero(lhs - rhs);
}

Formula Formula::LtZero(LinearTerm term) {
  Node n{FormulaKind::kLt};
  n.term = std::move(term);
  return make(std::move(n));
}

Formula Formula::Eq(const LinearTerm& lhs, const LinearTerm& rhs) {
  return EqZero(lhs - rhs);
}

Formula Formula::EqZero(LinearTerm term) {
  Node n{FormulaKind::kEq};
  n.term = std::move(term);
  return make(std::move(n));
}

Formula Formula::Div(Polynomial modulus, LinearTerm arg) {
  Node n{FormulaKind::kDiv};
  n.term = std::move(arg);
  n.poly = std::move(modulus);
  return make(std::move(n));
}

Formula Formula::Not(Formula f) {
  Node n{FormulaKind::kNot};
  n.kids.push_back(std::move(f));
  return make(std::move(n));
}

Formula Formula::And(std::vector<Formula> kids) {
  Node n{FormulaKind::kAnd};
  n.kids = std::move(kids);
  return make(std::move(n));
}

Formula Formula::Or(std::vector<Formula> kids) {
  Node n{FormulaKind::kOr};
  n.kids = std::move(kids);
  return make(std::move(n));
}

Formula Formula::Exists(VarId v, Formula body) {
  Node n{FormulaKind::kExists};
  n.var = std::move(v);
  n.kids.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::Forall(VarId v, Formula body) {
  Node n{FormulaKind::kForall};
  n.var = std::move(v);
  n.kids.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::BExists(VarId v, Polynomial bound, Formula body) {
  Node n{FormulaKind::kBExists};
  n.var = std::move(v);
  n.poly = std::move(bound);
  n.kids.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::BForall(VarId v, Polynomial bound, Formula body) {
  Node n{FormulaKind::kBForall};
  n.var = std::move(v);
  n.poly = std::move(bound);
  n.kids.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::Le(const LinearTerm& lhs, const LinearTerm& rhs) {
  return Not(Lt(rhs, lhs));
}
Formula Formula::Gt(const LinearTerm& lhs, const LinearTerm& rhs) {
  return Lt(rhs, lhs);
}
Formula Formula::Ge(const LinearTerm& lhs, const LinearTerm& rhs) {
  return Not(Lt(lhs, rhs));
}
Formula Formula::Ne(const LinearTerm& lhs, const LinearTerm& rhs) {
  return Not(Eq(lhs, rhs));
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const {
  switch (kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
    case FormulaKind::kLt:
    case FormulaKind::kEq:
    case FormulaKind::kDiv:
      return true;
    default:
      return false;
  }
}

bool Formula::is_literal() const {
  return is_atom() || (kind() == FormulaKind::kNot && child().is_atom());
}

bool Formula::is_quantifier() const { return kind() >= FormulaKind::kExists; }

bool Formula::is_bounded_quantifier() const {
  return kind() == FormulaKind::kBExists || kind() == FormulaKind::kBForall;
}

const LinearTerm& Formula::term() const { return node_->term; }
const Polynomial& Formula::modulus() const { return node_->poly; }
const Polynomial& Formula::bound() const { return node_->poly; }
const VarId& Formula::var() const { return node_->var; }
std::span<const Formula> Formula::children() const { return node_->kids; }
const Formula& Formula::child() const { return node_->kids.front(); }

Formula Formula::with_children(std::vector<Formula> kids) const {
  Node n = *node_;
  n.kids = std::move(kids);
  return make(std::move(n));
}

Formula Formula::with_term(LinearTerm term) const {
  Node n = *node_;
  n.term = std::move(term);
  return make(std::move(n));
}

std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.kids.size() != y.kids.size()) {
    return false;
  }
  if (!(x.term == y.term) || !(x.poly == y.poly) || !(x.var == y.var)) {
    return false;
  }
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (!(x.kids[i] == y.kids[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Structural queries

namespace {

void collect_free(const Formula& f, std::set<VarId>& bound, std::set<VarId>& out) {
  if (f.is_atom()) {
    for (const auto& [v, c] : f.term().coeffs()) {
      if (!bound.contains(v)) out.insert(v);
    }
    return;
  }
  if (f.is_quantifier()) {
    bool inserted = bound.insert(f.var()).second;
    collect_free(f.child(), bound, out);
    if (inserted) bound.erase(f.var());
    return;
  }
  for (const auto& k : f.children()) collect_free(k, bound, out);
}

void collect_all(const Formula& f, std::set<VarId>& out) {
  if (f.is_atom()) {
    for (const auto& [v, c] : f.term().coeffs()) out.insert(v);
    return;
  }
  if (f.is_quantifier()) out.insert(f.var());
  for (const auto& k : f.children()) collect_all(k, out);
}

}  // namespace

std::set<VarId> free_vars(const Formula& f) {
  std::set<VarId> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<VarId> all_vars(const Formula& f) {
  std::set<VarId> out;
  collect_all(f, out);
  return out;
}

bool occurs_free(const Formula& f, const VarId& v) {
  if (f.is_atom()) return f.term().mentions(v);
  if (f.is_quantifier() && f.var() == v) return false;
  for (const auto& k : f.children()) {
    if (occurs_free(k, v)) return true;
  }
  return false;
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const auto& k : f.children()) n += node_count(k);
  return n;
}

std::size_t count_unbounded_quantifiers(const Formula& f) {
  std::size_t n = (f.kind() == FormulaKind::kExists ||
                   f.kind() == FormulaKind::kForall)
                      ? 1
                      : 0;
  for (const auto& k : f.children()) n += count_unbounded_quantifiers(k);
  return n;
}

std::size_t count_quantifiers(const Formula& f) {
  std::size_t n = f.is_quantifier() ? 1 : 0;
  for (const auto& k : f.children()) n += count_quantifiers(k);
  return n;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

Formula rebind(const Formula& q, const VarId& v, Formula body) {
  switch (q.kind()) {
    case FormulaKind::kExists:
      return Formula::Exists(v, std::move(body));
    case FormulaKind::kForall:
      return Formula::Forall(v, std::move(body));
    case FormulaKind::kBExists:
      return Formula::BExists(v, q.bound(), std::move(body));
    default:
      return Formula::BForall(v, q.bound(), std::move(body));
  }
}

Formula subst(const Formula& f, const VarId& v, const LinearTerm& s,
              FreshVars& fresh) {
  if (f.is_atom()) {
    if (!f.term().mentions(v)) return f;
    return f.with_term(f.term().substitute(v, s));
  }
  if (f.is_quantifier()) {
    const VarId& w = f.var();
    if (w == v || !occurs_free(f.child(), v)) return f;
    if (s.mentions(w)) {
      VarId renamed = fresh.fresh(w.name);
      Formula body = subst(f.child(), w, LinearTerm::Var(renamed), fresh);
      body = subst(body, v, s, fresh);
      return rebind(f, renamed, std::move(body));
    }
    return f.with_children({subst(f.child(), v, s, fresh)});
  }
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& k : f.children()) kids.push_back(subst(k, v, s, fresh));
  return f.with_children(std::move(kids));
}

Formula rename_rec(const Formula& f, FreshVars& fresh) {
  if (f.is_atom()) return f;
  if (f.is_quantifier()) {
    VarId renamed = fresh.fresh(f.var().name);
    Formula body = rename_rec(f.child(), fresh);
    body = subst(body, f.var(), LinearTerm::Var(renamed), fresh);
    return rebind(f, renamed, std::move(body));
  }
  std::vector<Formula> kids;
  for (const auto& k : f.children()) kids.push_back(rename_rec(k, fresh));
  return f.with_children(std::move(kids));
}

}  // namespace

Formula substitute(const Formula& f, const VarId& v, const LinearTerm& replacement,
                   FreshVars& fresh) {
  return subst(f, v, replacement, fresh);
}

Formula substitute(const Formula& f, const VarId& v,
                   const LinearTerm& replacement) {
  FreshVars fresh;
  fresh.reserve_all(all_vars(f));
  for (const auto& [w, c] : replacement.coeffs()) fresh.reserve(w);
  return subst(f, v, replacement, fresh);
}

Formula rename_bound(const Formula& f, FreshVars& fresh) {
  fresh.reserve_all(all_vars(f));
  return rename_rec(f, fresh);
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

using BinderMap = std::map<VarId, std::size_t>;

std::map<std::string, Polynomial> canonical_term(const LinearTerm& term,
                                                 const BinderMap& binders) {
  std::map<std::string, Polynomial> out;
  for (const auto& [v, c] : term.coeffs()) {
    auto it = binders.find(v);
    std::string key = it == binders.end() ? "$" + v.display()
                                          : "#" + std::to_string(it->second);
    out.emplace(std::move(key), c);
  }
  out.emplace("", term.constant());
  return out;
}

bool alpha_eq(const Formula& a, const Formula& b, BinderMap& ma, BinderMap& mb,
              std::size_t depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
      return true;
    case FormulaKind::kDiv:
      if (!(a.modulus() == b.modulus())) return false;
      [[fallthrough]];
    case FormulaKind::kLt:
    case FormulaKind::kEq:
      return canonical_term(a.term(), ma) == canonical_term(b.term(), mb);
    case FormulaKind::kExists:
    case FormulaKind::kForall:
    case FormulaKind::kBExists:
    case FormulaKind::kBForall: {
      if (a.is_bounded_quantifier() && !(a.bound() == b.bound())) return false;
      auto saved_a = ma.find(a.var()) == ma.end()
                         ? std::optional<std::size_t>()
                         : std::optional<std::size_t>(ma[a.var()]);
      auto saved_b = mb.find(b.var()) == mb.end()
                         ? std::optional<std::size_t>()
                         : std::optional<std::size_t>(mb[b.var()]);
      ma[a.var()] = depth;
      mb[b.var()] = depth;
      bool eq = alpha_eq(a.child(), b.child(), ma, mb, depth + 1);
      if (saved_a) ma[a.var()] = *saved_a; else ma.erase(a.var());
      if (saved_b) mb[b.var()] = *saved_b; else mb.erase(b.var());
      return eq;
    }
    default: {
      if (a.children().size() != b.children().size()) return false;
      for (std::size_t i = 0; i < a.children().size(); ++i) {
        if (!alpha_eq(a.children()[i], b.children()[i], ma, mb, depth)) {
          return false;
        }
      }
      return true;
    }
  }
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  BinderMap ma, mb;
  return alpha_eq(a, b, ma, mb, 0);
}

// ---------------------------------------------------------------------------
// Evaluation

bool divides(const BigInt& modulus, const BigInt& value) {
  if (modulus == 0) return false;
  return value % modulus == 0;
}

BigInt eval_term(const LinearTerm& term, std::uint64_t t, const Assignment& env) {
  BigInt acc = term.constant().eval(t);
  for (const auto& [v, c] : term.coeffs()) {
    auto it = env.find(v);
    if (it == env.end()) throw MissingBindingError(v.display());
    acc += c.eval(t) * it->second;
  }
  return acc;
}

namespace {

bool eval_rec(const Formula& f, std::uint64_t t, Assignment& env) {
  switch (f.kind()) {
    case FormulaKind::kTrue:
      return true;
    case FormulaKind::kFalse:
      return false;
    case FormulaKind::kLt:
      return eval_term(f.term(), t, env) < 0;
    case FormulaKind::kEq:
      return eval_term(f.term(), t, env) == 0;
    case FormulaKind::kDiv:
      return divides(f.modulus().eval(t), eval_term(f.term(), t, env));
    case FormulaKind::kNot:
      return !eval_rec(f.child(), t, env);
    case FormulaKind::kAnd:
      for (const auto& k : f.children()) {
        if (!eval_rec(k, t, env)) return false;
      }
      return true;
    case FormulaKind::kOr:
      for (const auto& k : f.children()) {
        if (eval_rec(k, t, env)) return true;
      }
      return false;
    case FormulaKind::kExists:
    case FormulaKind::kForall:
      throw UnboundedQuantifierError(
          "evaluate: unbounded quantifier over '" + f.var().display() +
          "' has no finite semantics");
    case FormulaKind::kBExists:
    case FormulaKind::kBForall: {
      const bool exists = f.kind() == FormulaKind::kBExists;
      const BigInt bound = f.bound().eval(t);
      std::optional<BigInt> saved;
      if (auto it = env.find(f.var()); it != env.end()) saved = it->second;
      bool result = !exists;
      for (BigInt z = 0; z <= bound; ++z) {
        env[f.var()] = z;
        if (eval_rec(f.child(), t, env) == exists) {
          result = exists;
          break;
        }
      }
      if (saved) env[f.var()] = *saved; else env.erase(f.var());
      return result;
    }
  }
  return false;
}

}  // namespace

bool evaluate(const Formula& f, std::uint64_t t, const Assignment& env) {
  Assignment scratch = env;
  return eval_rec(f, t, scratch);
}

}  // namespace ppres
