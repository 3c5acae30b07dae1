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
#include <atomic>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "ppres/error.hpp"
#include "ppres/oracle.hpp"

namespace ppres {

std::string to_string(EquivReport::Status status) {
  switch (status) {
    case EquivReport::Status::kPass:
      return "pass";
    case EquivReport::Status::kCounterexample:
      return "counterexample";
    case EquivReport::Status::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PPRES_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

namespace {

constexpr std::uint64_t kEvalBudget = 20000;

struct TResult {
  std::optional<std::vector<std::int64_t>> witness;
  std::size_t points = 0;
  std::string error;
};

std::vector<int> positions(const GroundFormula& g, const std::vector<VarId>& vars) {
  std::vector<int> out;
  for (std::size_t i = 0; i < g.free_count; ++i) {
    out.push_back(static_cast<int>(std::find(vars.begin(), vars.end(), g.slots[i]) - vars.begin()));
  }
  return out;
}

TResult check_at(const Formula& phi, const Formula& psi, bool psi_bounded, std::uint64_t t,
                 const std::vector<VarId>& vars, std::int64_t radius,
                 const std::atomic<std::uint64_t>& best) {
  TResult r;
  try {
    const GroundFormula gp = ground(phi, t);
    const GroundFormula gq = ground(psi, t);
    const std::vector<int> pp = positions(gp, vars), pq = positions(gq, vars);
    // Each coordinate walks 0, 1, -1, 2, -2, ...
    const std::int64_t last = 2 * radius;
    auto value_of = [](std::int64_t k) { return k % 2 == 1 ? (k + 1) / 2 : -(k / 2); };
    std::vector<std::int64_t> index(vars.size(), 0), point(vars.size(), 0);
    std::vector<std::int64_t> ep(pp.size()), eq(pq.size());
    bool enumeration_too_slow = false;
    for (;;) {
      for (std::size_t i = 0; i < index.size(); ++i) point[i] = value_of(index[i]);
      if (best.load() < t) return r;
      for (std::size_t i = 0; i < pp.size(); ++i) ep[i] = point[pp[i]];
      for (std::size_t i = 0; i < pq.size(); ++i) eq[i] = point[pq[i]];
      const bool a = classical_cooper_decide(gp, ep);
      // Finite evaluation first; both deciders are exact, so a point that is
      // too expensive to enumerate goes to the elimination procedure.
      std::optional<bool> b;
      if (psi_bounded && !enumeration_too_slow) {
        b = eval_bounded_within(gq, eq, kEvalBudget);
        enumeration_too_slow = !b;
      }
      if (!b) b = classical_cooper_decide(gq, eq);
      ++r.points;
      if (a != *b) {
        r.witness = point;
        return r;
      }
      std::size_t i = vars.size();
      while (i > 0 && index[i - 1] == last) index[--i] = 0;
      if (i == 0) break;
      ++index[i - 1];
    }
  } catch (const OverflowError& e) {
    r.error = "t=" + std::to_string(t) + ": " + e.what();
  }
  return r;
}

}  // namespace

EquivReport check_equiv(const Formula& phi, const Formula& psi, const GridSpec& grid) {
  EquivReport report;
  report.grid = grid;
  std::set<VarId> all = free_vars(phi);
  for (const auto& v : free_vars(psi)) all.insert(v);
  report.vars.assign(all.begin(), all.end());
  if (grid.t_max < grid.t_min) return report;

  const bool psi_bounded = count_unbounded_quantifiers(psi) == 0;
  const std::size_t n = grid.t_max - grid.t_min + 1;
  std::vector<TResult> results(n);
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      const std::uint64_t t = grid.t_min + i;
      if (best.load() < t) continue;
      results[i] = check_at(phi, psi, psi_bounded, t, report.vars, grid.radius, best);
      if (results[i].witness) {
        std::uint64_t cur = best.load();
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < n; ++i) {
    report.points += results[i].points;
    if (results[i].witness && !report.t) {
      report.status = EquivReport::Status::kCounterexample;
      report.t = grid.t_min + i;
      for (std::size_t k = 0; k < report.vars.size(); ++k) {
        report.witness[report.vars[k]] = (*results[i].witness)[k];
      }
    }
    if (!results[i].error.empty() && report.note.empty()) report.note = results[i].error;
  }
  if (!report.t && !report.note.empty()) report.status = EquivReport::Status::kInconclusive;
  return report;
}

}  // namespace ppres
