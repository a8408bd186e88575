// Copyright 2026 The feyndd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "feyndd/mtbdd.hpp"

namespace feyndd {

/// Exact element 2^(-s/2) * sum_j c_j omega_r^j of Z[omega_r][1/sqrt2] with
/// big-integer coefficients. Stored in the redundant power basis (length r);
/// reduction modulo the cyclotomic polynomial happens on demand.
class Cyclotomic {
 public:
  explicit Cyclotomic(uint32_t modulus = 1);
  Cyclotomic(uint32_t modulus, std::vector<mpz_class> coefficients, long sqrt2_exponent = 0);

  static Cyclotomic integer(uint32_t modulus, const mpz_class& n);
  static Cyclotomic omega_power(uint32_t modulus, int64_t j);
  /// c_j = N_{(j - phase) mod r}, i.e. omega^phase * sum_j N_j omega^j.
  static Cyclotomic from_counts(const CountVector& counts, long sqrt2_exponent, uint32_t phase);

  uint32_t modulus() const { return modulus_; }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  long sqrt2_exponent() const { return sqrt2_; }

  Cyclotomic operator*(const Cyclotomic& other) const;
  /// Requires equal sqrt2 exponent parity unless sqrt2 lies in Z[omega_r]
  /// (8 | r); throws std::domain_error otherwise.
  Cyclotomic operator+(const Cyclotomic& other) const;
  Cyclotomic operator-() const;
  Cyclotomic operator-(const Cyclotomic& other) const { return *this + (-other); }
  Cyclotomic conj() const;
  Cyclotomic abs_squared() const;
  /// Multiplies the value by omega^j.
  Cyclotomic rotate(int64_t j) const;

  /// Coefficients reduced modulo Phi_r (entries >= phi(r) are zero) and common
  /// factors of 2 folded into the exponent. Canonical when 8 does not divide
  /// r; use operator== for comparisons.
  Cyclotomic normalized() const;
  bool is_zero() const;
  /// Exact test value == n.
  bool equals_integer(const mpz_class& n) const;
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Binary floating-point evaluation carried at `precision` bits (>= 53),
  /// rounded to long double. Relative error of the carried sum is below
  /// 2^-(precision - ceil(log2(sum |c_j|)) - 2).
  std::complex<long double> to_complex(int precision = 128) const;

  std::string to_string() const;

 private:
  uint32_t modulus_;
  std::vector<mpz_class> coeffs_;
  long sqrt2_;
};

/// Coefficients of the r-th cyclotomic polynomial, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(uint32_t r);

/// Real probability from an exact value: rejects an imaginary part above
/// 1e-9 * (1 + |value|) with std::logic_error; clamps to [0, 1] when within
/// 1e-9 of the interval.
double probability(const Cyclotomic& value);

/// Re(num) / Re(den) at `precision` bits; safe when both are far outside the
/// long double range. Throws std::domain_error for a zero denominator.
long double real_ratio(const Cyclotomic& num, const Cyclotomic& den, int precision = 128);

/// {"re": .., "im": .., "exact": {"r": .., "coeffs": [..], "sqrt2_exp": ..}} of
/// the normalized value. Coefficients outside int64 are decimal strings.
std::string to_json(const Cyclotomic& value);
/// Inverse of to_json (reads only the exact part). Throws InputError.
Cyclotomic cyclotomic_from_json(const std::string& text);

}  // namespace feyndd
