/*
 * Copyright 2026 The norml Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NORML_CYCLO_CYC_NUMBER_HPP_
#define NORML_CYCLO_CYC_NUMBER_HPP_

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace norml {

// Coefficients of the M-th cyclotomic polynomial, low degree first.
const std::vector<long>& cyclotomic_poly(std::uint64_t M);
std::uint64_t euler_phi(std::uint64_t M);

// Element of Q(zeta_M), zeta_M = exp(2 pi i / M), stored in the power basis
// 1, zeta, ..., zeta^{phi(M)-1}.
class CycNumber {
 public:
  CycNumber() : M_(1), c_(1) {}
  CycNumber(long v) : M_(1), c_{mpq_class(v)} {}  // NOLINT
  explicit CycNumber(const mpq_class& v) : M_(1), c_{v} {}

  static CycNumber zeta(std::uint64_t M, std::int64_t k);
  // sum_k raw[k] zeta_M^k for any length of raw.
  static CycNumber from_powers(std::uint64_t M, const std::vector<mpq_class>& raw);
  static CycNumber from_powers(std::uint64_t M, const std::vector<std::int64_t>& raw);

  std::uint64_t conductor() const { return M_; }
  const std::vector<mpq_class>& coords() const { return c_; }

  CycNumber lifted(std::uint64_t M2) const;
  // Representation over the smallest conductor dividing M that holds the value.
  CycNumber normalized() const;
  // Coefficients on zeta_M^k, k < M, where M is the conductor.
  std::vector<mpq_class> power_coefficients(std::uint64_t M) const;

  bool is_zero() const;
  bool is_rational() const;
  bool is_integer() const;
  mpq_class rational_value() const;

  CycNumber operator-() const;
  CycNumber& operator+=(const CycNumber& o);
  CycNumber& operator-=(const CycNumber& o);
  CycNumber& operator*=(const CycNumber& o);
  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
  friend CycNumber operator/(const CycNumber& a, const CycNumber& b) {
    return a * b.inverse();
  }
  friend bool operator==(const CycNumber& a, const CycNumber& b);
  friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

  CycNumber scaled(const mpq_class& s) const;
  CycNumber pow(std::uint64_t e) const;
  CycNumber inverse() const;
  // Image under zeta_M -> zeta_M^k, gcd(k, M) = 1.
  CycNumber galois(std::uint64_t k) const;
  CycNumber conj() const;

  std::complex<double> to_complex() const;
  std::complex<long double> to_complex_ld() const;
  double abs() const { return std::abs(to_complex()); }
  std::string to_string() const;

 private:
  CycNumber(std::uint64_t M, std::vector<mpq_class> c) : M_(M), c_(std::move(c)) {}
  static CycNumber reduce(std::uint64_t M, std::vector<mpq_class> raw);

  std::uint64_t M_;
  std::vector<mpq_class> c_;
};

}  // namespace norml

#endif  // NORML_CYCLO_CYC_NUMBER_HPP_
