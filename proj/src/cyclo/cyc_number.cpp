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

#include "norml/cyclo/cyc_number.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "norml/error.hpp"
#include "norml/gf/numtheory.hpp"

namespace norml {

namespace {

std::mutex g_phi_mu;

std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> a,
                                      std::vector<mpq_class> b, bool* ok) {
  // Least-squares-free exact solve of a (rows x cols) x = b; rows >= cols.
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    const mpq_class iv = 1 / a[rank][c];
    for (auto& v : a[rank]) v *= iv;
    b[rank] *= iv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[rank][k];
      b[i] -= f * b[rank];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++rank;
  }
  *ok = true;
  for (std::size_t i = rank; i < rows; ++i) {
    if (b[i] != 0) *ok = false;
  }
  std::vector<mpq_class> x(cols);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
  return x;
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t M) {
  std::uint64_t phi = M;
  for (auto [q, e] : factorize(M)) phi = phi / q * (q - 1);
  return phi;
}

const std::vector<long>& cyclotomic_poly(std::uint64_t M) {
  static std::map<std::uint64_t, std::vector<long>> cache;
  {
    std::lock_guard<std::mutex> lock(g_phi_mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
  }
  std::vector<long> num(M + 1, 0);
  num[0] = -1;
  num[M] = 1;
  for (std::uint64_t d : divisors(M)) {
    if (d == M) continue;
    const std::vector<long>& den = cyclotomic_poly(d);
    // Exact division by a monic polynomial.
    const std::size_t dd = den.size() - 1;
    std::vector<long> q(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
      const long c = num[k];
      q[k - dd] = c;
      if (c) {
        for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
      }
    }
    num = std::move(q);
  }
  std::lock_guard<std::mutex> lock(g_phi_mu);
  return cache.emplace(M, std::move(num)).first->second;
}

CycNumber CycNumber::reduce(std::uint64_t M, std::vector<mpq_class> raw) {
  std::vector<mpq_class> r(M);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k] != 0) r[k % M] += raw[k];
  }
  const std::vector<long>& phi = cyclotomic_poly(M);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = M; k-- > deg;) {
    if (r[k] == 0) continue;
    const mpq_class c = r[k];
    for (std::size_t i = 0; i <= deg; ++i) {
      if (phi[i]) r[k - deg + i] -= c * phi[i];
    }
  }
  r.resize(deg);
  return CycNumber(M, std::move(r));
}

CycNumber CycNumber::zeta(std::uint64_t M, std::int64_t k) {
  if (M == 0) throw Error(ErrorCode::kInvalidArgument, "conductor 0");
  const std::int64_t m = static_cast<std::int64_t>(M);
  const std::uint64_t e = static_cast<std::uint64_t>(((k % m) + m) % m);
  std::vector<mpq_class> raw(e + 1);
  raw[e] = 1;
  return reduce(M, std::move(raw));
}

CycNumber CycNumber::from_powers(std::uint64_t M, const std::vector<mpq_class>& raw) {
  return reduce(M, raw);
}

CycNumber CycNumber::from_powers(std::uint64_t M, const std::vector<std::int64_t>& raw) {
  std::vector<mpq_class> r(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) r[i] = mpq_class(static_cast<long>(raw[i]));
  return reduce(M, std::move(r));
}

CycNumber CycNumber::lifted(std::uint64_t M2) const {
  if (M2 == M_) return *this;
  if (M2 % M_ != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "conductor " + std::to_string(M_) + " does not divide " + std::to_string(M2));
  }
  const std::uint64_t step = M2 / M_;
  std::vector<mpq_class> raw(c_.empty() ? 1 : (c_.size() - 1) * step + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
  return reduce(M2, std::move(raw));
}

std::vector<mpq_class> CycNumber::power_coefficients(std::uint64_t M) const {
  CycNumber l = lifted(M);
  std::vector<mpq_class> out(M);
  for (std::size_t i = 0; i < l.c_.size(); ++i) out[i] = l.c_[i];
  return out;
}

CycNumber CycNumber::galois(std::uint64_t k) const {
  if (std::gcd(k, M_) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "Galois exponent not a unit");
  }
  std::vector<mpq_class> raw(M_);
  for (std::size_t i = 0; i < c_.size(); ++i) raw[(i * k) % M_] += c_[i];
  return reduce(M_, std::move(raw));
}

CycNumber CycNumber::conj() const { return galois(M_ - 1 == 0 ? 1 : M_ - 1); }

CycNumber CycNumber::normalized() const {
  if (is_rational()) return CycNumber(rational_value());
  for (std::uint64_t d : divisors(M_)) {
    if (d == M_) return *this;
    bool fixed = true;
    for (std::uint64_t k = 1 + d; k < M_ && fixed; k += d) {
      if (std::gcd(k, M_) != 1) continue;
      if (galois(k) != *this) fixed = false;
    }
    if (!fixed) continue;
    const std::uint64_t phid = euler_phi(d);
    const std::size_t rows = c_.size();
    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(phid));
    for (std::uint64_t j = 0; j < phid; ++j) {
      CycNumber basis = zeta(d, static_cast<std::int64_t>(j)).lifted(M_);
      for (std::size_t i = 0; i < rows; ++i) a[i][j] = basis.c_[i];
    }
    bool ok = false;
    auto x = solve_rational(a, c_, &ok);
    if (ok) return CycNumber(d, std::move(x));
  }
  return *this;
}

bool CycNumber::is_zero() const {
  for (const auto& v : c_) {
    if (v != 0) return false;
  }
  return true;
}

bool CycNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

bool CycNumber::is_integer() const {
  return is_rational() && (c_.empty() || c_[0].get_den() == 1);
}

mpq_class CycNumber::rational_value() const {
  if (!is_rational()) throw Error(ErrorCode::kInvalidArgument, "value is not rational");
  return c_.empty() ? mpq_class(0) : c_[0];
}

CycNumber CycNumber::operator-() const {
  CycNumber r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
  if (o.M_ != M_) {
    const std::uint64_t L = std::lcm(M_, o.M_);
    *this = lifted(L);
    CycNumber ol = o.lifted(L);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += ol.c_[i];
    return *this;
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) { return *this += -o; }

CycNumber& CycNumber::operator*=(const CycNumber& o) {
  const std::uint64_t L = std::lcm(M_, o.M_);
  CycNumber a = lifted(L);
  CycNumber b = o.lifted(L);
  if (b.is_rational()) {
    for (auto& v : a.c_) v *= b.c_[0];
    *this = std::move(a);
    return *this;
  }
  if (a.is_rational()) {
    for (auto& v : b.c_) v *= a.c_[0];
    *this = std::move(b);
    return *this;
  }
  std::vector<mpq_class> raw(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
    }
  }
  *this = reduce(L, std::move(raw));
  return *this;
}

bool operator==(const CycNumber& a, const CycNumber& b) {
  if (a.M_ == b.M_) return a.c_ == b.c_;
  const std::uint64_t L = std::lcm(a.M_, b.M_);
  return a.lifted(L).c_ == b.lifted(L).c_;
}

CycNumber CycNumber::scaled(const mpq_class& s) const {
  CycNumber r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

CycNumber CycNumber::pow(std::uint64_t e) const {
  CycNumber result(1L);
  CycNumber base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kZeroArgument, "inverse of zero");
  if (is_rational()) return CycNumber(mpq_class(1 / c_[0]));
  const std::size_t phi = c_.size();
  std::vector<std::vector<mpq_class>> a(phi, std::vector<mpq_class>(phi));
  CycNumber col = *this;
  const CycNumber z = zeta(M_, 1);
  for (std::size_t j = 0; j < phi; ++j) {
    for (std::size_t i = 0; i < phi; ++i) a[i][j] = col.c_[i];
    col *= z;
  }
  std::vector<mpq_class> rhs(phi);
  rhs[0] = 1;
  bool ok = false;
  auto x = solve_rational(a, rhs, &ok);
  return CycNumber(M_, std::move(x));
}

std::complex<long double> CycNumber::to_complex_ld() const {
  std::complex<long double> s = 0;
  const long double two_pi = 6.283185307179586476925286766559L;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const long double ang = two_pi * static_cast<long double>(i) / static_cast<long double>(M_);
    const long double v = static_cast<long double>(c_[i].get_d());
    s += std::complex<long double>(v * std::cos(ang), v * std::sin(ang));
  }
  return s;
}

std::complex<double> CycNumber::to_complex() const {
  auto z = to_complex_ld();
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

std::string CycNumber::to_string() const {
  CycNumber v = normalized();
  if (v.is_rational()) return v.rational_value().get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.c_.size(); ++i) {
    if (v.c_[i] == 0) continue;
    mpq_class c = v.c_[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    if (i == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "z" << v.M_;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace norml
