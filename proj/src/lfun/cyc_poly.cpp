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

#include "norml/lfun/cyc_poly.hpp"

#include <Eigen/Eigenvalues>

#include "norml/error.hpp"

namespace norml {

void cp_trim(CPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int cp_degree(const CPoly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (!a[i].is_zero()) return i;
  }
  return -1;
}

CPoly cp_add(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  cp_trim(r);
  return r;
}

CPoly cp_sub(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  cp_trim(r);
  return r;
}

CPoly cp_mul(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  CPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  cp_trim(r);
  return r;
}

CPoly cp_scale(const CPoly& a, const CycNumber& s) {
  CPoly r = a;
  for (auto& c : r) c *= s;
  cp_trim(r);
  return r;
}

void cp_divmod(const CPoly& a, const CPoly& b, CPoly& q, CPoly& r) {
  const int db = cp_degree(b);
  if (db < 0) throw Error(ErrorCode::kZeroArgument, "polynomial division by zero");
  r = a;
  cp_trim(r);
  q.clear();
  if (cp_degree(r) < db) return;
  q.assign(r.size() - db, CycNumber());
  const CycNumber lead = b[db].inverse();
  for (int i = cp_degree(r); i >= db; i = cp_degree(r)) {
    const CycNumber c = r[i] * lead;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
    r[i] = CycNumber();
    cp_trim(r);
    if (r.empty()) break;
  }
  cp_trim(q);
}

CPoly cp_mod(const CPoly& a, const CPoly& b) {
  CPoly q, r;
  cp_divmod(a, b, q, r);
  return r;
}

CPoly cp_monic(const CPoly& a) {
  const int d = cp_degree(a);
  if (d < 0) return {};
  return cp_scale(a, a[d].inverse());
}

CPoly cp_gcd(CPoly a, CPoly b) {
  cp_trim(a);
  cp_trim(b);
  while (!b.empty()) {
    CPoly r = cp_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return cp_monic(a);
}

CPoly cp_derivative(const CPoly& a) {
  CPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * CycNumber(static_cast<long>(i)));
  cp_trim(r);
  return r;
}

CPoly cp_reverse(const CPoly& a, int n) {
  CPoly r(n + 1);
  for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i) r[n - i] = a[i];
  cp_trim(r);
  return r;
}

CycNumber cp_eval(const CPoly& a, const CycNumber& x) {
  CycNumber v;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * x + *it;
  return v;
}

CPoly cp_invmod(const CPoly& a, const CPoly& m) {
  // Extended Euclid on (m, a), tracking the coefficient of a.
  CPoly r0 = m, r1 = cp_mod(a, m), s0, s1{CycNumber(1L)};
  while (cp_degree(r1) > 0) {
    CPoly q, r;
    cp_divmod(r0, r1, q, r);
    CPoly s = cp_sub(s0, cp_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (cp_degree(r1) < 0) throw Error(ErrorCode::kZeroArgument, "polynomial not invertible");
  return cp_mod(cp_scale(s1, r1[0].inverse()), m);
}

std::vector<CycNumber> cp_power_sums(const CPoly& monic, int S) {
  const int n = cp_degree(monic);
  // e_k with x^n - e1 x^{n-1} + e2 x^{n-2} - ...
  std::vector<CycNumber> e(n + 1);
  for (int k = 0; k <= n; ++k) e[k] = k % 2 ? -monic[n - k] : monic[n - k];
  std::vector<CycNumber> p(S + 1);
  for (int k = 1; k <= S; ++k) {
    CycNumber v;
    for (int i = 1; i < k && i <= n; ++i) {
      const CycNumber t = e[i] * p[k - i];
      v += i % 2 ? t : -t;
    }
    if (k <= n) {
      const CycNumber t = e[k] * CycNumber(static_cast<long>(k));
      v += k % 2 ? t : -t;
    }
    p[k] = v;
  }
  p.erase(p.begin());
  return p;
}

std::vector<std::complex<long double>> cp_complex_roots(const CPoly& a) {
  using cld = std::complex<long double>;
  const int n = cp_degree(a);
  if (n < 1) return {};
  std::vector<cld> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = a[i].to_complex_ld();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    const cld v = -c[i] / c[n];
    comp(i, n - 1) = std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  std::vector<cld> roots;
  for (int i = 0; i < n; ++i) {
    cld z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    for (int it = 0; it < 8; ++it) {
      cld f = c[n], df = 0;
      for (int k = n - 1; k >= 0; --k) {
        df = df * z + f;
        f = f * z + c[k];
      }
      if (std::abs(df) == 0) break;
      const cld step = f / df;
      z -= step;
      if (std::abs(step) <= 1e-18L * std::max<long double>(1, std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

}  // namespace norml
