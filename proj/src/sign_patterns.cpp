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

#include "sign_patterns.hpp"

namespace ppres::internal {
namespace {

bool admits(SignClass c, int sign) {
  switch (c) {
    case SignClass::kNegative:
      return sign < 0;
    case SignClass::kZero:
      return sign == 0;
    case SignClass::kPositive:
      return sign > 0;
    case SignClass::kNonzero:
      return sign != 0;
  }
  return false;
}

Formula condition(SignClass c, const Polynomial& p) {
  switch (c) {
    case SignClass::kNegative:
      return Formula::LtZero(LinearTerm(p));
    case SignClass::kZero:
      return Formula::EqZero(LinearTerm(p));
    case SignClass::kPositive:
      return Formula::LtZero(LinearTerm(-p));
    case SignClass::kNonzero:
      return Formula::Not(Formula::EqZero(LinearTerm(p)));
  }
  return Formula::True();
}

struct Search {
  const std::vector<Polynomial>& ps;
  const std::vector<std::vector<SignClass>>& options;
  bool prune;
  SignTable table;
  std::vector<SignClass> choice;
  std::vector<SignPattern> out;

  // Whether c holds at every t (only claimed from an exact table).
  bool always(std::size_t i, SignClass c) const {
    if (!table.exact) return false;
    for (auto s : table.signs[i]) {
      if (!admits(c, s)) return false;
    }
    return true;
  }

  void run(std::size_t i, const std::vector<char>& alive, bool beyond) {
    if (i == ps.size()) {
      std::vector<Formula> guard;
      for (std::size_t k = 0; k < ps.size(); ++k) {
        if (prune && (ps[k].is_constant() || always(k, choice[k]))) continue;
        guard.push_back(condition(choice[k], ps[k]));
      }
      out.push_back({choice, guard.empty()      ? Formula::True()
                             : guard.size() == 1 ? guard[0]
                                                 : Formula::And(std::move(guard))});
      return;
    }
    for (SignClass c : options[i]) {
      std::vector<char> next = alive;
      bool any = false;
      bool next_beyond = beyond;
      if (prune) {
        for (std::size_t t = 0; t < next.size(); ++t) {
          next[t] = next[t] && admits(c, table.signs[i][t]);
          any |= next[t] != 0;
        }
        // Past an inexact table only constants are known.
        if (next_beyond && ps[i].is_constant()) next_beyond = admits(c, table.signs[i][0]);
        if (!any && !next_beyond) continue;
      }
      choice.push_back(c);
      run(i + 1, next, next_beyond);
      choice.pop_back();
    }
  }
};

}  // namespace

std::vector<SignPattern> sign_patterns(const std::vector<Polynomial>& ps,
                                       const std::vector<std::vector<SignClass>>& options,
                                       bool prune) {
  Search s{ps, options, prune, {}, {}, {}};
  if (prune) s.table = sign_table(ps);
  std::vector<char> alive(prune ? s.table.horizon : 0, 1);
  s.run(0, alive, prune && !s.table.exact);
  return std::move(s.out);
}

}  // namespace ppres::internal
