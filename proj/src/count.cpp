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

#include "ppres/count.hpp"

#include "ppres/error.hpp"
#include "ppres/oracle.hpp"

namespace ppres {
namespace {

std::int64_t small(const BigInt& v) {
  if (abs(v) > BigInt(1) << 40) throw OverflowError("count box too large: " + v.str());
  return static_cast<std::int64_t>(v);
}

CountRow count_at(const GroundFormula& g, std::int64_t lo, std::int64_t hi) {
  CountRow row;
  const std::size_t d = g.free_count;
  if (d == 0) {
    row.count = eval_bounded(g, {}) ? 1 : 0;
    return row;
  }
  // Walk [lo - 1, hi + 1]^d; interior points count, the outer shell only
  // sets `truncated`.
  std::vector<std::int64_t> p(d, lo - 1);
  for (;;) {
    bool inside = true;
    for (auto v : p) inside &= lo <= v && v <= hi;
    if (inside || !row.truncated) {
      if (eval_bounded(g, p)) {
        if (inside) {
          ++row.count;
        } else {
          row.truncated = true;
        }
      }
    }
    std::size_t i = d;
    while (i > 0 && p[i - 1] == hi + 1) p[--i] = lo - 1;
    if (i == 0) break;
    ++p[i - 1];
  }
  return row;
}

// Solves A x = b exactly; returns nullopt when A is singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a,
                                           std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}

}  // namespace

CountTable count_family(const Formula& family, std::uint64_t t_min, std::uint64_t t_max,
                        const CountBox& box) {
  if (count_unbounded_quantifiers(family) != 0) {
    throw UnboundedQuantifierError("count: the family has unbounded quantifiers; run eliminate first");
  }
  CountTable table;
  const std::set<VarId> fv = free_vars(family);
  table.vars.assign(fv.begin(), fv.end());
  table.box = box;
  for (std::uint64_t t = t_min; t <= t_max; ++t) {
    const GroundFormula g = ground(family, t);
    CountRow row = count_at(g, small(box.lo.eval(t)), small(box.hi.eval(t)));
    row.t = t;
    table.rows.push_back(std::move(row));
  }
  return table;
}

QuasiPolynomialFit fit_quasi_polynomial(const CountTable& table, std::uint64_t period,
                                        unsigned degree) {
  QuasiPolynomialFit fit;
  fit.period = period == 0 ? 1 : period;
  fit.degree = degree;
  fit.exact = true;
  const std::size_t n = degree + 1;
  for (std::uint64_t r = 0; r < fit.period; ++r) {
    ResidueFit rf;
    rf.residue = r;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> ys;
    for (const auto& row : table.rows) {
      if (row.truncated || row.t % fit.period != r) continue;
      rf.ts.push_back(row.t);
      std::vector<Rational> powers(n);
      Rational x = 1;
      for (std::size_t k = 0; k < n; ++k, x *= row.t) powers[k] = x;
      rows.push_back(std::move(powers));
      ys.emplace_back(row.count);
    }
    std::optional<std::vector<Rational>> coeffs;
    if (rows.size() >= n) {
      // normal equations
      std::vector<std::vector<Rational>> ata(n, std::vector<Rational>(n));
      std::vector<Rational> atb(n);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          atb[j] += rows[i][j] * ys[i];
          for (std::size_t k = 0; k < n; ++k) ata[j][k] += rows[i][j] * rows[i][k];
        }
      }
      coeffs = solve(std::move(ata), std::move(atb));
    }
    if (coeffs) {
      rf.coeffs = std::move(*coeffs);
      rf.exact = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Rational v = 0;
        for (std::size_t k = 0; k < n; ++k) v += rf.coeffs[k] * rows[i][k];
        rf.residuals.push_back(ys[i] - v);
        rf.exact &= rf.residuals.back() == 0;
      }
      rf.integral = rf.exact;
      for (const auto& c : rf.coeffs) rf.integral &= denominator(c) == 1;
    }
    fit.exact &= rf.exact;
    fit.classes.push_back(std::move(rf));
  }
  return fit;
}

std::string format_polynomial(const std::vector<Rational>& coeffs) {
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Rational& c = coeffs[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = mag == 1 && k > 0;
    if (!unit) {
      std::string s = mag.str();
      out += (k > 0 && denominator(mag) != 1) ? "(" + s + ")" : s;
    }
    if (k > 0) out += k == 1 ? "t" : "t^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace ppres
