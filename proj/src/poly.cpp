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

#include "ppres/poly.hpp"

#include <functional>
#include <sstream>
#include <utility>

namespace ppres {

Polynomial::Polynomial(long long c) : coeffs_{BigInt(c)} { canonicalize(); }

Polynomial::Polynomial(BigInt c) : coeffs_{std::move(c)} { canonicalize(); }

Polynomial::Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  canonicalize();
}

Polynomial::Polynomial(std::initializer_list<long long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long long c : coeffs) coeffs_.emplace_back(c);
  canonicalize();
}

Polynomial Polynomial::Monomial(BigInt c, std::size_t degree) {
  std::vector<BigInt> coeffs(degree + 1);
  coeffs[degree] = std::move(c);
  return Polynomial(std::move(coeffs));
}

void Polynomial::canonicalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt Polynomial::eval(std::uint64_t t) const {
  BigInt acc = 0;
  const BigInt bt(t);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= bt;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigInt> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
  if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    if (a.coeffs_[i] < b.coeffs_[i]) return std::strong_ordering::less;
    if (a.coeffs_[i] > b.coeffs_[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t Polynomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& c : coeffs_) {
    // Low 64 bits plus sign are plenty for hashing.
    std::size_t v = static_cast<std::size_t>(
        static_cast<std::uint64_t>(abs(c) & BigInt(0xffffffffffffffffULL)));
    if (c < 0) v = ~v;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Polynomial product(std::span<const Polynomial> factors) {
  Polynomial acc(1);
  for (const auto& f : factors) acc *= f;
  return acc;
}

ConstantSign constant_sign(const Polynomial& p) {
  if (p.is_zero()) return ConstantSign::kZero;
  if (!p.is_constant()) return ConstantSign::kNonconstant;
  return p.leading() > 0 ? ConstantSign::kPositive : ConstantSign::kNegative;
}

SignTable sign_table(std::span<const Polynomial> ps, std::size_t cap) {
  BigInt bound = 0;
  for (const auto& p : ps) {
    if (p.is_constant()) continue;
    BigInt top = 0;
    for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) top = std::max(top, BigInt(abs(p.coeffs()[i])));
    bound = std::max(bound, BigInt(1 + top / abs(p.leading())));
  }
  SignTable table;
  table.exact = bound + 2 <= cap;
  table.horizon = table.exact ? static_cast<std::size_t>(bound) + 2 : cap;
  for (const auto& p : ps) {
    std::vector<signed char> row(table.horizon);
    for (std::size_t t = 0; t < table.horizon; ++t) {
      const BigInt v = p.eval(t);
      row[t] = v < 0 ? -1 : v > 0 ? 1 : 0;
    }
    table.signs.push_back(std::move(row));
  }
  return table;
}

SignsTaken signs_on_naturals(const Polynomial& p, std::size_t cap) {
  const SignTable table = sign_table(std::span<const Polynomial>(&p, 1), cap);
  if (!table.exact) return {true, true, true};
  SignsTaken s;
  for (auto v : table.signs[0]) {
    s.negative |= v < 0;
    s.zero |= v == 0;
    s.positive |= v > 0;
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.to_string();
}

}  // namespace ppres
