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

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ppres {

using BigInt = boost::multiprecision::cpp_int;

enum class ConstantSign { kZero, kPositive, kNegative, kNonconstant };

// An element of Z[t]. Coefficients are stored densely, lowest degree first,
// and the representation is kept canonical: no trailing zero coefficients,
// so the zero polynomial has no coefficients at all.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long long c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(BigInt c);
  explicit Polynomial(std::vector<BigInt> coeffs);
  Polynomial(std::initializer_list<long long> coeffs);

  // The monomial c * t^degree.
  static Polynomial Monomial(BigInt c, std::size_t degree);
  static Polynomial T() { return Monomial(1, 1); }

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  BigInt constant_term() const { return coeffs_.empty() ? BigInt(0) : coeffs_[0]; }
  const BigInt& leading() const { return coeffs_.back(); }

  BigInt eval(std::uint64_t t) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;
  // Total order: by degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const Polynomial& a,
                                          const Polynomial& b);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  void canonicalize();

  std::vector<BigInt> coeffs_;
};

Polynomial product(std::span<const Polynomial> factors);
ConstantSign constant_sign(const Polynomial& p);

// Signs (-1, 0, 1) of each polynomial at t = 0, 1, ..., horizon - 1. When
// `exact`, every t >= horizon - 1 has the signs of horizon - 1, since no
// polynomial has a root beyond its Cauchy bound.
struct SignTable {
  std::size_t horizon = 0;
  bool exact = true;
  std::vector<std::vector<signed char>> signs;  // signs[i][t]
};

SignTable sign_table(std::span<const Polynomial> ps, std::size_t cap = 4096);

// Which signs p takes over t in N. Conservative (all true) when the Cauchy
// bound exceeds `cap`.
struct SignsTaken {
  bool negative = false;
  bool zero = false;
  bool positive = false;
};
SignsTaken signs_on_naturals(const Polynomial& p, std::size_t cap = 4096);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace ppres
