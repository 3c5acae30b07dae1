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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "ppres/poly.hpp"

namespace ppres {

// Identifies an integer-valued variable. Variables read from source text have
// serial 0; FreshVars issues nonzero serials.
struct VarId {
  std::string name;
  std::uint32_t serial = 0;

  // Printable and parseable spelling, unique among variables of one run.
  std::string display() const;

  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

// Monotone generator of fresh variables for one pipeline run. Names already
// present in the input are reserved so that a fresh variable never prints
// the same as an existing one.
class FreshVars {
 public:
  FreshVars() = default;

  void reserve(const VarId& v) { used_.insert(v.display()); }
  template <typename Range>
  void reserve_all(const Range& vars) {
    for (const auto& v : vars) reserve(v);
  }

  VarId fresh(std::string_view base);
  std::uint32_t issued() const { return issued_; }

 private:
  std::unordered_set<std::string> used_;
  std::uint32_t next_ = 1;
  std::uint32_t issued_ = 0;
};

// sum_i p_i(t) * x_i + q(t). Zero coefficients are never stored.
class LinearTerm {
 public:
  LinearTerm() = default;
  LinearTerm(Polynomial constant)  // NOLINT(google-explicit-constructor)
      : constant_(std::move(constant)) {}
  LinearTerm(long long constant)  // NOLINT(google-explicit-constructor)
      : constant_(constant) {}

  static LinearTerm Var(const VarId& v, Polynomial coeff = Polynomial(1));

  const std::map<VarId, Polynomial>& coeffs() const { return coeffs_; }
  const Polynomial& constant() const { return constant_; }
  Polynomial coeff(const VarId& v) const;
  bool mentions(const VarId& v) const { return coeffs_.contains(v); }
  bool is_constant() const { return coeffs_.empty(); }

  // The term with v's summand removed.
  LinearTerm without(const VarId& v) const;
  LinearTerm substitute(const VarId& v, const LinearTerm& replacement) const;
  LinearTerm rename(const VarId& from, const VarId& to) const;

  LinearTerm operator-() const;
  LinearTerm& operator+=(const LinearTerm& other);
  LinearTerm& operator-=(const LinearTerm& other);
  LinearTerm& operator*=(const Polynomial& scale);
  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(LinearTerm a, const Polynomial& s) { return a *= s; }
  friend LinearTerm operator*(const Polynomial& s, LinearTerm a) { return a *= s; }

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;

  std::size_t hash() const;

 private:
  std::map<VarId, Polynomial> coeffs_;
  Polynomial constant_;
};

// Unnormalized term syntax over 0, 1, variables, +, - and f_alpha, as it
// appears in the object language.
struct SynTerm {
  struct Zero {};
  struct One {};
  struct Var {
    VarId var;
  };
  struct Add {
    std::shared_ptr<const SynTerm> lhs, rhs;
  };
  struct Sub {
    std::shared_ptr<const SynTerm> lhs, rhs;
  };
  struct Neg {
    std::shared_ptr<const SynTerm> arg;
  };
  // f_alpha(arg)
  struct Scale {
    Polynomial alpha;
    std::shared_ptr<const SynTerm> arg;
  };
  std::variant<Zero, One, Var, Add, Sub, Neg, Scale> node;
};

LinearTerm normalize_term(const SynTerm& term);

enum class FormulaKind {
  kTrue,
  kFalse,
  kLt,  // term < 0
  kEq,  // term = 0
  kDiv,  // D_modulus(term)
  kNot,
  kAnd,
  kOr,
  kExists,
  kForall,
  kBExists,  // exists v in [0, bound(t)]
  kBForall,  // forall v in [0, bound(t)]
};

// Immutable formula handle. Comparison atoms are kept as `term < 0` and
// `term = 0`; the printer moves summands back to a readable side.
class Formula {
 public:
  Formula();  // True

  static Formula True();
  static Formula False();
  static Formula Lt(const LinearTerm& lhs, const LinearTerm& rhs);
  static Formula LtZero(LinearTerm term);
  static Formula Eq(const LinearTerm& lhs, const LinearTerm& rhs);
  static Formula EqZero(LinearTerm term);
  static Formula Div(Polynomial modulus, LinearTerm arg);
  static Formula Not(Formula f);
  static Formula And(std::vector<Formula> kids);
  static Formula Or(std::vector<Formula> kids);
  static Formula Exists(VarId v, Formula body);
  static Formula Forall(VarId v, Formula body);
  static Formula BExists(VarId v, Polynomial bound, Formula body);
  static Formula BForall(VarId v, Polynomial bound, Formula body);

  // Surface comparisons, rewritten onto <, = and negation.
  static Formula Le(const LinearTerm& lhs, const LinearTerm& rhs);
  static Formula Gt(const LinearTerm& lhs, const LinearTerm& rhs);
  static Formula Ge(const LinearTerm& lhs, const LinearTerm& rhs);
  static Formula Ne(const LinearTerm& lhs, const LinearTerm& rhs);

  FormulaKind kind() const;
  bool is_atom() const;
  bool is_literal() const;  // atom or negated atom
  bool is_quantifier() const;
  bool is_bounded_quantifier() const;

  const LinearTerm& term() const;     // kLt, kEq, kDiv
  const Polynomial& modulus() const;  // kDiv
  const Polynomial& bound() const;    // kBExists, kBForall
  const VarId& var() const;           // quantifiers
  std::span<const Formula> children() const;
  const Formula& child() const;  // kNot and quantifiers

  // Same node kind and payload with new children.
  Formula with_children(std::vector<Formula> kids) const;
  Formula with_term(LinearTerm term) const;

  std::size_t hash() const;
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

std::set<VarId> free_vars(const Formula& f);
std::set<VarId> all_vars(const Formula& f);
bool occurs_free(const Formula& f, const VarId& v);
std::size_t node_count(const Formula& f);
std::size_t count_unbounded_quantifiers(const Formula& f);
std::size_t count_quantifiers(const Formula& f);

// Capture-avoiding substitution of `replacement` for the free occurrences of
// v. Binders that would capture a variable of the replacement are renamed
// with `fresh`.
Formula substitute(const Formula& f, const VarId& v, const LinearTerm& replacement,
                   FreshVars& fresh);
Formula substitute(const Formula& f, const VarId& v, const LinearTerm& replacement);

// Renames every bound variable to a fresh one, so that binders are pairwise
// distinct and distinct from the free variables.
Formula rename_bound(const Formula& f, FreshVars& fresh);

bool alpha_equivalent(const Formula& a, const Formula& b);

using Assignment = std::map<VarId, BigInt>;

// Truth of the formula at parameter t. Bounded quantifiers range over
// [0, bound(t)], which is empty for a negative bound. D with a modulus that
// vanishes at t is false. Throws UnboundedQuantifierError on Exists/Forall
// and MissingBindingError on an unbound free variable.
bool evaluate(const Formula& f, std::uint64_t t, const Assignment& env);

BigInt eval_term(const LinearTerm& term, std::uint64_t t, const Assignment& env);

// Euclidean-style divisibility test with the D_0 convention.
bool divides(const BigInt& modulus, const BigInt& value);

}  // namespace ppres
