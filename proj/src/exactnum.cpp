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

#include "feyndd/exactnum.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <mpfr.h>

#include "feyndd/errors.hpp"

namespace feyndd {

namespace {

using Poly = std::vector<mpz_class>;

// Exact division of a by the monic polynomial b (both lowest degree first).
Poly divide_monic(Poly a, const Poly& b) {
  size_t db = b.size() - 1;
  if (a.size() < b.size()) return {0};
  Poly q(a.size() - db, 0);
  for (size_t k = a.size(); k-- > db;) {
    mpz_class c = a[k];
    if (c == 0) continue;
    q[k - db] = c;
    for (size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  return q;
}

const Poly& phi(uint32_t r) {
  static std::mutex mu;
  static std::map<uint32_t, Poly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;
  Poly p(r + 1, 0);
  p[0] = -1;
  p[r] = 1;
  for (uint32_t d = 1; d < r; ++d) {
    if (r % d != 0) continue;
    // Recursion through the cache is fine: the lock is released by copying.
    Poly pd;
    {
      mu.unlock();
      pd = phi(d);
      mu.lock();
    }
    p = divide_monic(std::move(p), pd);
  }
  return cache.emplace(r, std::move(p)).first->second;
}

Poly reduce(Poly c, uint32_t r) {
  const Poly& f = phi(r);
  size_t deg = f.size() - 1;
  for (size_t k = c.size(); k-- > deg;) {
    if (c[k] == 0) continue;
    mpz_class lead = c[k];
    for (size_t i = 0; i <= deg; ++i) c[k - deg + i] -= lead * f[i];
  }
  return c;
}

bool all_zero(const Poly& c) {
  for (const auto& x : c) {
    if (x != 0) return false;
  }
  return true;
}

// c * sqrt2^k for k >= 0, in Z[omega_r]; odd k needs 8 | r.
Poly times_sqrt2_power(Poly c, long k, uint32_t r) {
  for (auto& x : c) x <<= static_cast<mp_bitcnt_t>(k / 2);
  if (k % 2 == 0) return c;
  if (r % 8 != 0) throw std::domain_error("sqrt(2) is not in Z[omega_r] for this r");
  // sqrt2 = omega^(r/8) + omega^(-r/8).
  uint32_t e = r / 8;
  Poly out(r, 0);
  for (uint32_t j = 0; j < r; ++j) {
    if (c[j] == 0) continue;
    out[(j + e) % r] += c[j];
    out[(j + r - e) % r] += c[j];
  }
  return out;
}

// Brings two exponents to a common one; returns {scale_a, scale_b, exponent}
// with scales in sqrt2 powers, or nullopt when parities cannot be reconciled.
struct Alignment {
  long da, db, exponent;
};

std::optional<Alignment> align(long sa, long sb, uint32_t r) {
  long t = std::max(sa, sb);
  long da = t - sa, db = t - sb;
  if (r % 8 == 0) return Alignment{da, db, t};
  if (da % 2 == 0 && db % 2 == 0) return Alignment{da, db, t};
  if (da % 2 != 0 && db % 2 != 0) return Alignment{da - 1, db - 1, t - 1};
  return std::nullopt;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(uint32_t r) {
  if (r < 1) throw std::invalid_argument("cyclotomic_polynomial: r must be positive");
  return phi(r);
}

Cyclotomic::Cyclotomic(uint32_t modulus) : modulus_(modulus), coeffs_(modulus, 0), sqrt2_(0) {
  if (modulus_ < 1) throw std::invalid_argument("Cyclotomic: modulus must be positive");
}

Cyclotomic::Cyclotomic(uint32_t modulus, std::vector<mpz_class> coefficients, long sqrt2_exponent)
    : modulus_(modulus), coeffs_(std::move(coefficients)), sqrt2_(sqrt2_exponent) {
  if (modulus_ < 1) throw std::invalid_argument("Cyclotomic: modulus must be positive");
  if (coeffs_.size() > modulus_) {
    for (size_t j = modulus_; j < coeffs_.size(); ++j) coeffs_[j % modulus_] += coeffs_[j];
  }
  coeffs_.resize(modulus_, 0);
}

Cyclotomic Cyclotomic::integer(uint32_t modulus, const mpz_class& n) {
  Cyclotomic c(modulus);
  c.coeffs_[0] = n;
  return c;
}

Cyclotomic Cyclotomic::omega_power(uint32_t modulus, int64_t j) {
  Cyclotomic c(modulus);
  int64_t r = modulus;
  c.coeffs_[((j % r) + r) % r] = 1;
  return c;
}

Cyclotomic Cyclotomic::from_counts(const CountVector& counts, long sqrt2_exponent, uint32_t phase) {
  const uint32_t r = static_cast<uint32_t>(counts.counts.size());
  Cyclotomic c(r);
  for (uint32_t j = 0; j < r; ++j) c.coeffs_[(j + phase) % r] = counts.counts[j];
  c.sqrt2_ = sqrt2_exponent;
  return c;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& other) const {
  if (modulus_ != other.modulus_) throw std::invalid_argument("Cyclotomic: modulus mismatch");
  Cyclotomic out(modulus_);
  for (uint32_t i = 0; i < modulus_; ++i) {
    if (coeffs_[i] == 0) continue;
    for (uint32_t j = 0; j < modulus_; ++j) {
      if (other.coeffs_[j] == 0) continue;
      out.coeffs_[(i + j) % modulus_] += coeffs_[i] * other.coeffs_[j];
    }
  }
  out.sqrt2_ = sqrt2_ + other.sqrt2_;
  return out;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& other) const {
  if (modulus_ != other.modulus_) throw std::invalid_argument("Cyclotomic: modulus mismatch");
  auto al = align(sqrt2_, other.sqrt2_, modulus_);
  if (!al) throw std::domain_error("Cyclotomic: cannot add values whose sqrt2 exponents differ in parity");
  Poly a = times_sqrt2_power(coeffs_, al->da, modulus_);
  Poly b = times_sqrt2_power(other.coeffs_, al->db, modulus_);
  for (uint32_t j = 0; j < modulus_; ++j) a[j] += b[j];
  return Cyclotomic(modulus_, std::move(a), al->exponent);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyclotomic Cyclotomic::conj() const {
  Cyclotomic out(modulus_);
  for (uint32_t j = 0; j < modulus_; ++j) out.coeffs_[(modulus_ - j) % modulus_] = coeffs_[j];
  out.sqrt2_ = sqrt2_;
  return out;
}

Cyclotomic Cyclotomic::abs_squared() const { return *this * conj(); }

Cyclotomic Cyclotomic::rotate(int64_t j) const { return *this * omega_power(modulus_, j); }

Cyclotomic Cyclotomic::normalized() const {
  Cyclotomic out(modulus_, reduce(coeffs_, modulus_), sqrt2_);
  if (all_zero(out.coeffs_)) {
    out.sqrt2_ = 0;
    return out;
  }
  for (;;) {
    for (const auto& c : out.coeffs_) {
      if (mpz_odd_p(c.get_mpz_t())) return out;
    }
    for (auto& c : out.coeffs_) c >>= 1;
    out.sqrt2_ -= 2;
  }
}

bool Cyclotomic::is_zero() const { return all_zero(reduce(coeffs_, modulus_)); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.modulus_ != b.modulus_) throw std::invalid_argument("Cyclotomic: modulus mismatch");
  auto al = align(a.sqrt2_, b.sqrt2_, a.modulus_);
  if (!al) {
    // One side is a rational multiple of sqrt2, which Q(omega_r) lacks here.
    return a.is_zero() && b.is_zero();
  }
  Poly x = times_sqrt2_power(a.coeffs_, al->da, a.modulus_);
  Poly y = times_sqrt2_power(b.coeffs_, al->db, a.modulus_);
  for (uint32_t j = 0; j < a.modulus_; ++j) x[j] -= y[j];
  return all_zero(reduce(std::move(x), a.modulus_));
}

bool Cyclotomic::equals_integer(const mpz_class& n) const { return *this == integer(modulus_, n); }

namespace {

// re + i*im = value, evaluated at the precision the outputs were initialised with.
void evaluate_mpfr(const Cyclotomic& value, mpfr_t re, mpfr_t im) {
  const uint32_t r = value.modulus();
  const long sqrt2 = value.sqrt2_exponent();
  mpfr_prec_t prec = mpfr_get_prec(re);
  mpfr_t angle, s, c, term;
  for (mpfr_ptr x : {angle, s, c, term}) mpfr_init2(x, prec);
  mpfr_set_zero(re, 1);
  mpfr_set_zero(im, 1);
  const auto& coeffs = value.coefficients();
  for (uint32_t j = 0; j < r; ++j) {
    if (coeffs[j] == 0) continue;
    mpfr_const_pi(angle, MPFR_RNDN);
    mpfr_mul_ui(angle, angle, 2 * j, MPFR_RNDN);
    mpfr_div_ui(angle, angle, r, MPFR_RNDN);
    mpfr_sin_cos(s, c, angle, MPFR_RNDN);
    mpfr_mul_z(term, c, coeffs[j].get_mpz_t(), MPFR_RNDN);
    mpfr_add(re, re, term, MPFR_RNDN);
    mpfr_mul_z(term, s, coeffs[j].get_mpz_t(), MPFR_RNDN);
    mpfr_add(im, im, term, MPFR_RNDN);
  }
  // 2^(-s/2) = 2^(-floor(s/2)) * (odd ? 1/sqrt2 : 1)
  long whole = sqrt2 >= 0 ? sqrt2 / 2 : -((-sqrt2 + 1) / 2);
  mpfr_mul_2si(re, re, -whole, MPFR_RNDN);
  mpfr_mul_2si(im, im, -whole, MPFR_RNDN);
  if (sqrt2 - 2 * whole == 1) {
    mpfr_set_ui(term, 2, MPFR_RNDN);
    mpfr_rec_sqrt(term, term, MPFR_RNDN);
    mpfr_mul(re, re, term, MPFR_RNDN);
    mpfr_mul(im, im, term, MPFR_RNDN);
  }
  for (mpfr_ptr x : {angle, s, c, term}) mpfr_clear(x);
}

}  // namespace

std::complex<long double> Cyclotomic::to_complex(int precision) const {
  if (precision < 53) throw std::invalid_argument("to_complex: precision below 53 bits");
  mpfr_t re, im;
  mpfr_init2(re, precision);
  mpfr_init2(im, precision);
  evaluate_mpfr(*this, re, im);
  std::complex<long double> out(mpfr_get_ld(re, MPFR_RNDN), mpfr_get_ld(im, MPFR_RNDN));
  mpfr_clear(re);
  mpfr_clear(im);
  return out;
}

long double real_ratio(const Cyclotomic& num, const Cyclotomic& den, int precision) {
  if (precision < 53) throw std::invalid_argument("real_ratio: precision below 53 bits");
  mpfr_t a, b, ai, bi;
  for (mpfr_ptr x : {a, b, ai, bi}) mpfr_init2(x, precision);
  evaluate_mpfr(num, a, ai);
  evaluate_mpfr(den, b, bi);
  if (mpfr_zero_p(b)) {
    for (mpfr_ptr x : {a, b, ai, bi}) mpfr_clear(x);
    throw std::domain_error("real_ratio: zero denominator");
  }
  mpfr_div(a, a, b, MPFR_RNDN);
  long double out = mpfr_get_ld(a, MPFR_RNDN);
  for (mpfr_ptr x : {a, b, ai, bi}) mpfr_clear(x);
  return out;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  out << '(';
  bool first = true;
  for (uint32_t j = 0; j < modulus_; ++j) {
    if (coeffs_[j] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << coeffs_[j].get_str();
    if (j == 1) out << "*w";
    if (j > 1) out << "*w^" << j;
  }
  if (first) out << '0';
  out << ")";
  if (sqrt2_ != 0) out << " * 2^(" << -sqrt2_ << "/2)";
  out << " [r=" << modulus_ << ']';
  return out.str();
}

double probability(const Cyclotomic& value) {
  auto z = value.to_complex(128);
  long double mag = std::abs(z);
  if (std::fabs(z.imag()) > 1e-9L * (1.0L + mag)) {
    throw std::logic_error("probability has a non-zero imaginary part: " + value.to_string());
  }
  long double p = z.real();
  if (p < 0 && p > -1e-9L) p = 0;
  if (p > 1 && p < 1 + 1e-9L) p = 1;
  return static_cast<double>(p);
}

std::string to_json(const Cyclotomic& value) {
  Cyclotomic n = value.normalized();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& c : n.coefficients()) {
    if (c.fits_slong_p()) {
      coeffs.push_back(static_cast<int64_t>(c.get_si()));
    } else {
      coeffs.push_back(c.get_str());
    }
  }
  auto z = n.to_complex(128);
  nlohmann::ordered_json j;
  j["re"] = static_cast<double>(z.real());
  j["im"] = static_cast<double>(z.imag());
  j["exact"] = {{"r", n.modulus()}, {"coeffs", coeffs}, {"sqrt2_exp", n.sqrt2_exponent()}};
  return j.dump();
}

Cyclotomic cyclotomic_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    const auto& e = j.contains("exact") ? j.at("exact") : j;
    std::vector<mpz_class> coeffs;
    for (const auto& c : e.at("coeffs")) {
      coeffs.emplace_back(c.is_string() ? c.get<std::string>() : std::to_string(c.get<int64_t>()));
    }
    return Cyclotomic(e.at("r").get<uint32_t>(), std::move(coeffs), e.at("sqrt2_exp").get<long>());
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed exact value: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw InputError(std::string("malformed exact value: ") + ex.what());
  }
}

}  // namespace feyndd
