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
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ppres/ast.hpp"

namespace ppres {

// Integer linear term over the variable slots of one GroundFormula.
struct GroundTerm {
  std::vector<std::int64_t> coeffs;  // one entry per slot
  std::int64_t constant = 0;

  bool mentions(int slot) const { return coeffs[slot] != 0; }
  bool is_constant() const;
};

enum class GroundKind { kTrue, kFalse, kLt, kEq, kDiv, kNot, kAnd, kOr, kExists, kForall,
                        kBExists, kBForall };

struct GroundNode;
using GroundPtr = std::shared_ptr<const GroundNode>;

struct GroundNode {
  GroundKind kind = GroundKind::kTrue;
  GroundTerm term;          // kLt, kEq, kDiv
  std::int64_t number = 0;  // positive modulus for kDiv, bound for bounded quantifiers
  int var = -1;             // quantifiers
  std::vector<GroundPtr> kids;
};

// A classical Presburger formula with D_n predicates: phi with every
// coefficient evaluated at a fixed t.
struct GroundFormula {
  std::uint64_t t = 0;
  std::vector<VarId> slots;  // free variables first, sorted
  std::size_t free_count = 0;
  GroundPtr root;

  int slot_of(const VarId& v) const;  // -1 when absent
};

// D_0 atoms become False; negative moduli are replaced by their absolute value.
// Throws OverflowError if a value leaves the 64-bit range.
GroundFormula ground(const Formula& f, std::uint64_t t);

// Values for the free slots of g, in slot order.
std::vector<std::int64_t> free_values(const GroundFormula& g, const Assignment& env);

// Exact truth over Z by classical Cooper elimination. Bounded quantifiers with
// at most `kExpandBound` + 1 values are expanded, longer ones are treated as
// guarded unbounded quantifiers.
bool classical_cooper_decide(const GroundFormula& g, std::vector<std::int64_t> free_env);
bool classical_cooper_decide(const GroundFormula& g, const Assignment& env);

inline constexpr std::int64_t kExpandBound = 64;

// Quantifier-free equivalent of E slot. body over the slots of g. The body
// must be quantifier-free.
GroundPtr cooper_eliminate(const GroundFormula& g, int slot, const GroundPtr& body);

// Quantifier-free equivalent of g.root.
GroundPtr cooper_qe(const GroundFormula& g);

// Finite semantics of a formula without unbounded quantifiers. Long ranges are
// scanned region by region: between the cut points of the order atoms in the
// quantified variable the body is periodic, so one period per region suffices.
bool eval_bounded(const GroundFormula& g, std::vector<std::int64_t> free_env);
bool eval_bounded(const Formula& f, std::uint64_t t, const Assignment& env);

// The same semantics by plain enumeration of every range.
// Gives up (nullopt) after `budget` bounded-quantifier body evaluations.
std::optional<bool> eval_bounded_within(const GroundFormula& g, std::vector<std::int64_t> free_env,
                                        std::uint64_t budget);

bool eval_bounded_naive(const GroundFormula& g, std::vector<std::int64_t> free_env);

// Direct evaluation of a quantifier-free ground formula.
bool eval_qfree(const GroundNode& n, const std::vector<std::int64_t>& env);

struct GridSpec {
  std::uint64_t t_min = 0;
  std::uint64_t t_max = 12;
  std::int64_t radius = 15;
};

struct EquivReport {
  enum class Status { kPass, kCounterexample, kInconclusive };
  Status status = Status::kPass;
  GridSpec grid;
  std::vector<VarId> vars;
  std::optional<std::uint64_t> t;   // witness
  Assignment witness;
  std::size_t points = 0;           // grid points compared
  std::string note;                 // reason when inconclusive
};

std::string to_string(EquivReport::Status status);

// Decides phi with the classical oracle and psi with eval_bounded (or the
// oracle when psi has unbounded quantifiers) at every grid point. The
// reported counterexample is the least failing (t, assignment) in
// lexicographic order, with variables sorted and each value ordered
// 0, 1, -1, 2, -2, ...
EquivReport check_equiv(const Formula& phi, const Formula& psi, const GridSpec& grid = {});

// Worker count: PPRES_THREADS if set, else hardware concurrency.
unsigned worker_count();

}  // namespace ppres
