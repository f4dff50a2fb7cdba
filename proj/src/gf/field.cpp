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

#include "norml/gf/field.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "norml/error.hpp"
#include "norml/gf/poly.hpp"

namespace norml {

namespace {

std::atomic<int> g_max_field_bits{48};

using FpPoly = std::vector<u64>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, u64 p) {
  fp_trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    }
    fp_trim(a);
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly t(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      t[i + j] = (t[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return fp_mod(std::move(t), m, p);
}

FpPoly fp_powmod(FpPoly base, u64 e, const FpPoly& m, u64 p) {
  FpPoly result{1};
  base = fp_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = fp_mulmod(result, base, m, p);
    base = fp_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool fp_irreducible(const FpPoly& f, u64 p) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return n == 1;
  std::vector<FpPoly> xp(n + 1);
  xp[0] = fp_mod(FpPoly{0, 1}, f, p);
  for (int i = 1; i <= n; ++i) xp[i] = fp_powmod(xp[i - 1], p, f, p);
  if (xp[n] != xp[0]) return false;
  for (auto [l, e] : factorize(static_cast<u64>(n))) {
    FpPoly h = xp[n / l];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    fp_trim(h);
    if (fp_gcd(h, f, p).size() != 1) return false;
  }
  return true;
}

struct CacheKey {
  u64 p;
  int n;
  u64 seed;
  bool operator<(const CacheKey& o) const {
    return std::tie(p, n, seed) < std::tie(o.p, o.n, o.seed);
  }
};

std::mutex g_cache_mu;
std::map<CacheKey, FieldPtr>& field_cache() {
  static std::map<CacheKey, FieldPtr> cache;
  return cache;
}

u64 inv_mod_p(u64 a, u64 p) { return powmod(a, p - 2, p); }

}  // namespace

void set_max_field_bits(int bits) {
  if (bits < 1 || bits > 62) {
    throw Error(ErrorCode::kInvalidArgument, "field bits must be in [1, 62]");
  }
  g_max_field_bits = bits;
}

int max_field_bits() { return g_max_field_bits; }

FieldPtr build_field(u64 p, int n, u64 seed) {
  const CacheKey key{p, n, seed};
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = field_cache().find(key);
    if (it != field_cache().end()) return it->second;
  }
  auto ctx = std::make_shared<const FieldCtx>(p, n, seed);
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto [it, inserted] = field_cache().emplace(key, ctx);
  return it->second;
}

FieldCtx::FieldCtx(u64 p, int n, u64 seed) : p_(p), n_(n), seed_(seed) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  }
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "degree must be >= 1");
  if (p >= (u64{1} << 31)) {
    throw Error(ErrorCode::kDegreeTooLarge, "characteristic above 2^31");
  }
  const u64 limit = (max_field_bits() >= 63) ? ~u64{0}
                                             : (u64{1} << max_field_bits());
  auto ord = checked_pow(p, n, limit);
  if (n > kMaxDegree || !ord) {
    throw Error(ErrorCode::kDegreeTooLarge,
                std::to_string(p) + "^" + std::to_string(n) +
                    " exceeds 2^" + std::to_string(max_field_bits()));
  }
  order_ = *ord;
  lazy_ = p < (u64{1} << 16);
  find_modulus();
  build_tables();
  find_generator();
  build_subfields();
}

std::string FieldCtx::descriptor() const {
  return std::to_string(p_) + "^" + std::to_string(n_);
}

void FieldCtx::find_modulus() {
  for (u64 step = 0; step < order_; ++step) {
    u64 code = (seed_ + step) % order_;
    FpPoly f(n_ + 1);
    for (int i = 0; i < n_; ++i) {
      f[i] = code % p_;
      code /= p_;
    }
    f[n_] = 1;
    if (fp_irreducible(f, p_)) {
      modulus_.assign(f.begin(), f.end());
      return;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "no irreducible modulus found");
}

void FieldCtx::build_tables() {
  const int n = n_;
  // x^n = -sum a_i x^i; successive rows multiply by x.
  reduction_.assign(static_cast<std::size_t>(std::max(n - 1, 0)) * n, 0);
  std::vector<u64> row(n);
  for (int i = 0; i < n; ++i) row[i] = (p_ - modulus_[i]) % p_;
  for (int k = 0; k + 1 < n; ++k) {
    for (int i = 0; i < n; ++i) reduction_[k * n + i] = row[i];
    const u64 top = row[n - 1];
    for (int i = n - 1; i > 0; --i) {
      row[i] = (row[i - 1] + mulmod(top, (p_ - modulus_[i]) % p_, p_)) % p_;
    }
    row[0] = mulmod(top, (p_ - modulus_[0]) % p_, p_);
  }

  frob_rows_.assign(n, std::vector<std::uint32_t>(static_cast<std::size_t>(n) * n, 0));
  Elt sj = x();
  for (int j = 0; j < n; ++j) {
    Elt power = one();
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) frob_rows_[j][i * n + k] = power.c[i];
      power = mul(power, sj);
    }
    sj = pow(sj, p_);
  }
  abs_trace_.assign(n, 0);
  for (int k = 0; k < n; ++k) {
    u64 s = 0;
    for (int j = 0; j < n; ++j) s += frob_rows_[j][k];
    abs_trace_[k] = static_cast<std::uint32_t>(s % p_);
  }
}

void FieldCtx::find_generator() {
  group_factors_ = factorize(order_ - 1);
  if (order_ == 2) {
    generator_ = one();
    return;
  }
  for (u64 step = 0; step < order_; ++step) {
    const u64 code = (seed_ + step) % order_;
    if (code == 0) continue;
    Elt g = decode(code);
    if (is_generator(g)) {
      generator_ = g;
      return;
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "no generator found");
}

bool FieldCtx::is_generator(const Elt& g) const {
  if (is_zero(g)) return false;
  if (order_ == 2) return g == one();
  for (auto [l, e] : group_factors_) {
    if (pow(g, (order_ - 1) / l) == one()) return false;
  }
  return true;
}

void FieldCtx::build_subfields() {
  for (u64 d : divisors(static_cast<u64>(n_))) {
    divisor_degrees_.push_back(static_cast<int>(d));
  }
  for (int d : divisor_degrees_) {
    SubfieldEmbedding emb;
    emb.d = d;
    if (d == n_) {
      emb.beta = x();
    } else {
      emb.standalone = build_field(p_, d, 0);
      const auto& fd = emb.standalone->modulus();
      KPoly poly;
      for (auto c : fd) poly.push_back(scalar(c));
      auto roots = kp_roots(*this, poly, n_);
      if (roots.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "subfield modulus has no root");
      }
      emb.beta = roots.front();
    }
    Elt power = one();
    for (int i = 0; i < d; ++i) {
      emb.basis.push_back(power);
      power = mul(power, emb.beta);
    }
    // Row-reduce the n x d embedding matrix to pick d independent rows.
    std::vector<std::vector<u64>> a(n_, std::vector<u64>(2 * d, 0));
    for (int r = 0; r < n_; ++r) {
      for (int c = 0; c < d; ++c) a[r][c] = emb.basis[c].c[r];
    }
    std::vector<int> chosen;
    std::vector<std::vector<u64>> sub;
    for (int r = 0; r < n_ && static_cast<int>(chosen.size()) < d; ++r) {
      // Test row r for independence against chosen rows.
      std::vector<std::vector<u64>> trial = sub;
      trial.push_back(std::vector<u64>(a[r].begin(), a[r].begin() + d));
      std::vector<std::vector<u64>> m = trial;
      int rank = 0;
      for (int c = 0; c < d && rank < static_cast<int>(m.size()); ++c) {
        int piv = -1;
        for (int i = rank; i < static_cast<int>(m.size()); ++i) {
          if (m[i][c]) {
            piv = i;
            break;
          }
        }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        const u64 iv = inv_mod_p(m[rank][c], p_);
        for (auto& v : m[rank]) v = mulmod(v, iv, p_);
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
          if (i == rank || m[i][c] == 0) continue;
          const u64 f = m[i][c];
          for (int k = 0; k < d; ++k) {
            m[i][k] = (m[i][k] + p_ - mulmod(f, m[rank][k], p_)) % p_;
          }
        }
        ++rank;
      }
      if (rank == static_cast<int>(trial.size())) {
        chosen.push_back(r);
        sub = std::move(trial);
      }
    }
    // Invert the d x d matrix sub (rows indexed by chosen).
    std::vector<std::vector<u64>> aug(d, std::vector<u64>(2 * d, 0));
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) aug[i][k] = sub[i][k];
      aug[i][d + i] = 1;
    }
    for (int c = 0; c < d; ++c) {
      int piv = c;
      while (aug[piv][c] == 0) ++piv;
      std::swap(aug[piv], aug[c]);
      const u64 iv = inv_mod_p(aug[c][c], p_);
      for (auto& v : aug[c]) v = mulmod(v, iv, p_);
      for (int i = 0; i < d; ++i) {
        if (i == c || aug[i][c] == 0) continue;
        const u64 f = aug[i][c];
        for (int k = 0; k < 2 * d; ++k) {
          aug[i][k] = (aug[i][k] + p_ - mulmod(f, aug[c][k], p_)) % p_;
        }
      }
    }
    // sub * coeffs = u[chosen]  =>  coeffs = inv(sub) * u[chosen].
    emb.pivots = chosen;
    emb.restrict_rows.assign(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) {
        emb.restrict_rows[i * d + k] = static_cast<std::uint32_t>(aug[i][d + k]);
      }
    }
    std::vector<u64> tau(d);
    for (int i = 0; i < d; ++i) {
      if (d == n_) {
        tau[i] = abs_trace_[i];
      } else {
        tau[i] = emb.standalone->abs_trace(emb.standalone->pow(emb.standalone->x(), i));
      }
    }
    emb.trace_functional.assign(n_, 0);
    for (int k = 0; k < d; ++k) {
      u64 s = 0;
      for (int i = 0; i < d; ++i) s = (s + mulmod(tau[i], emb.restrict_rows[i * d + k], p_)) % p_;
      emb.trace_functional[chosen[k]] = static_cast<std::uint32_t>(s);
    }
    subfields_.push_back(std::move(emb));
  }
}

Elt FieldCtx::one() const {
  Elt e;
  e.c[0] = 1;
  return e;
}

Elt FieldCtx::scalar(std::int64_t v) const {
  Elt e;
  const std::int64_t pp = static_cast<std::int64_t>(p_);
  e.c[0] = static_cast<std::uint32_t>(((v % pp) + pp) % pp);
  return e;
}

Elt FieldCtx::x() const {
  if (n_ == 1) return scalar(-static_cast<std::int64_t>(modulus_[0]));
  Elt e;
  e.c[1] = 1;
  return e;
}

Elt FieldCtx::decode(u64 code) const {
  if (code >= order_) {
    throw Error(ErrorCode::kInvalidArgument,
                "encoding " + std::to_string(code) + " outside " + descriptor());
  }
  Elt e;
  for (int i = 0; i < n_; ++i) {
    e.c[i] = static_cast<std::uint32_t>(code % p_);
    code /= p_;
  }
  return e;
}

u64 FieldCtx::encode(const Elt& a) const {
  u64 code = 0;
  for (int i = n_ - 1; i >= 0; --i) code = code * p_ + a.c[i];
  return code;
}

Elt FieldCtx::add(const Elt& a, const Elt& b) const {
  Elt r;
  for (int i = 0; i < n_; ++i) {
    u64 s = static_cast<u64>(a.c[i]) + b.c[i];
    r.c[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

void FieldCtx::add_into(Elt& acc, const Elt& b) const {
  for (int i = 0; i < n_; ++i) {
    u64 s = static_cast<u64>(acc.c[i]) + b.c[i];
    acc.c[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
}

Elt FieldCtx::sub(const Elt& a, const Elt& b) const {
  Elt r;
  for (int i = 0; i < n_; ++i) {
    u64 s = static_cast<u64>(a.c[i]) + p_ - b.c[i];
    r.c[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

Elt FieldCtx::neg(const Elt& a) const {
  Elt r;
  for (int i = 0; i < n_; ++i) {
    r.c[i] = a.c[i] ? static_cast<std::uint32_t>(p_ - a.c[i]) : 0;
  }
  return r;
}

Elt FieldCtx::mul_scalar(const Elt& a, std::uint32_t s) const {
  Elt r;
  for (int i = 0; i < n_; ++i) {
    r.c[i] = static_cast<std::uint32_t>(static_cast<u64>(a.c[i]) * s % p_);
  }
  return r;
}

void FieldCtx::reduce_wide(const u64* t, Elt& out) const {
  const int n = n_;
  u64 acc[kMaxDegree];
  if (lazy_) {
    for (int i = 0; i < n; ++i) acc[i] = t[i];
    for (int k = 0; k + 1 < n; ++k) {
      const u64 h = t[n + k] % p_;
      if (h == 0) continue;
      const std::uint32_t* row = &reduction_[static_cast<std::size_t>(k) * n];
      for (int i = 0; i < n; ++i) acc[i] += h * row[i];
    }
    for (int i = 0; i < n; ++i) out.c[i] = static_cast<std::uint32_t>(acc[i] % p_);
    return;
  }
  for (int i = 0; i < n; ++i) acc[i] = t[i] % p_;
  for (int k = 0; k + 1 < n; ++k) {
    const u64 h = t[n + k] % p_;
    if (h == 0) continue;
    const std::uint32_t* row = &reduction_[static_cast<std::size_t>(k) * n];
    for (int i = 0; i < n; ++i) acc[i] = (acc[i] + h * row[i]) % p_;
  }
  for (int i = 0; i < n; ++i) out.c[i] = static_cast<std::uint32_t>(acc[i]);
}

Elt FieldCtx::mul(const Elt& a, const Elt& b) const {
  const int n = n_;
  u64 t[2 * kMaxDegree];
  std::fill(t, t + 2 * n - 1, u64{0});
  if (lazy_) {
    for (int i = 0; i < n; ++i) {
      const u64 ai = a.c[i];
      if (ai == 0) continue;
      for (int j = 0; j < n; ++j) t[i + j] += ai * b.c[j];
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const u64 ai = a.c[i];
      if (ai == 0) continue;
      for (int j = 0; j < n; ++j) t[i + j] = (t[i + j] + ai * b.c[j]) % p_;
    }
  }
  if (n == 1) {
    Elt r;
    r.c[0] = static_cast<std::uint32_t>(t[0] % p_);
    return r;
  }
  Elt r;
  reduce_wide(t, r);
  return r;
}

Elt FieldCtx::pow(Elt a, u64 e) const {
  Elt result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return result;
}

Elt FieldCtx::inv(const Elt& a) const {
  if (is_zero(a)) throw Error(ErrorCode::kZeroArgument, "inverse of zero");
  return pow(a, order_ - 2);
}

Elt FieldCtx::apply_rows(const std::vector<std::uint32_t>& rows,
                         const Elt& a) const {
  const int n = n_;
  Elt r;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t* row = &rows[static_cast<std::size_t>(i) * n];
    u64 s = 0;
    if (lazy_) {
      for (int k = 0; k < n; ++k) s += static_cast<u64>(row[k]) * a.c[k];
      s %= p_;
    } else {
      for (int k = 0; k < n; ++k) s = (s + static_cast<u64>(row[k]) * a.c[k]) % p_;
    }
    r.c[i] = static_cast<std::uint32_t>(s);
  }
  return r;
}

Elt FieldCtx::frob(const Elt& a, int j) const {
  j %= n_;
  if (j < 0) j += n_;
  if (j == 0) return a;
  return apply_rows(frob_rows_[j], a);
}

void FieldCtx::require_divisor(int d) const {
  if (d < 1 || n_ % d != 0) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(d) + " does not divide " + std::to_string(n_));
  }
}

Elt FieldCtx::trace_to(const Elt& a, int d, int D) const {
  if (D == 0) D = n_;
  require_divisor(D);
  require_divisor(d);
  if (D % d != 0) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(d) + " does not divide " + std::to_string(D));
  }
  Elt s = a;
  for (int i = 1; i < D / d; ++i) add_into(s, frob(a, d * i));
  return s;
}

Elt FieldCtx::norm_to(const Elt& a, int d, int D) const {
  if (D == 0) D = n_;
  require_divisor(D);
  require_divisor(d);
  if (D % d != 0) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(d) + " does not divide " + std::to_string(D));
  }
  if (is_zero(a)) return a;
  Elt s = a;
  for (int i = 1; i < D / d; ++i) s = mul(s, frob(a, d * i));
  return s;
}

bool FieldCtx::in_subfield(const Elt& a, int d) const {
  require_divisor(d);
  return frob(a, d) == a;
}

std::uint32_t FieldCtx::abs_trace(const Elt& a, int d) const {
  const std::vector<std::uint32_t>* f = &abs_trace_;
  if (d != 0 && d != n_) f = &subfield(d).trace_functional;
  u64 s = 0;
  if (lazy_) {
    for (int i = 0; i < n_; ++i) s += static_cast<u64>((*f)[i]) * a.c[i];
    s %= p_;
  } else {
    for (int i = 0; i < n_; ++i) s = (s + static_cast<u64>((*f)[i]) * a.c[i]) % p_;
  }
  return static_cast<std::uint32_t>(s);
}

u64 FieldCtx::subfield_order(int d) const {
  require_divisor(d);
  return *checked_pow(p_, d);
}

Elt FieldCtx::subfield_generator(int d) const {
  require_divisor(d);
  if (d == n_) return generator_;
  return pow(generator_, (order_ - 1) / (subfield_order(d) - 1));
}

const SubfieldEmbedding& FieldCtx::subfield(int d) const {
  require_divisor(d);
  for (const auto& s : subfields_) {
    if (s.d == d) return s;
  }
  throw Error(ErrorCode::kNotADivisor, "subfield not registered");
}

Elt FieldCtx::embed(int d, const Elt& standalone) const {
  const auto& s = subfield(d);
  Elt acc;
  for (int i = 0; i < d; ++i) {
    if (standalone.c[i] == 0) continue;
    add_into(acc, mul_scalar(s.basis[i], standalone.c[i]));
  }
  return acc;
}

bool FieldCtx::try_restrict(int d, const Elt& a, Elt& out) const {
  const auto& s = subfield(d);
  Elt c;
  for (int i = 0; i < d; ++i) {
    u64 v = 0;
    for (int k = 0; k < d; ++k) {
      v = (v + static_cast<u64>(s.restrict_rows[i * d + k]) * a.c[s.pivots[k]]) % p_;
    }
    c.c[i] = static_cast<std::uint32_t>(v);
  }
  if (embed(d, c) != a) return false;
  out = c;
  return true;
}

Elt FieldCtx::restrict_to(int d, const Elt& a) const {
  Elt out;
  if (!try_restrict(d, a, out)) {
    throw Error(ErrorCode::kNotInSubfield,
                "element " + std::to_string(encode(a)) + " not in degree-" +
                    std::to_string(d) + " subfield of " + descriptor());
  }
  return out;
}

}  // namespace norml
