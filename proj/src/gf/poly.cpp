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

#include "norml/gf/poly.hpp"

#include <algorithm>

#include "norml/error.hpp"

namespace norml {

void kp_trim(const FieldCtx& F, KPoly& a) {
  while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

int kp_degree(const KPoly& a) { return static_cast<int>(a.size()) - 1; }

KPoly kp_add(const FieldCtx& F, const KPoly& a, const KPoly& b) {
  KPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) F.add_into(r[i], a[i]);
    if (i < b.size()) F.add_into(r[i], b[i]);
  }
  kp_trim(F, r);
  return r;
}

KPoly kp_sub(const FieldCtx& F, const KPoly& a, const KPoly& b) {
  KPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = a[i];
    if (i < b.size()) r[i] = F.sub(r[i], b[i]);
  }
  kp_trim(F, r);
  return r;
}

KPoly kp_mul(const FieldCtx& F, const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      F.add_into(r[i + j], F.mul(a[i], b[j]));
    }
  }
  kp_trim(F, r);
  return r;
}

void kp_divmod(const FieldCtx& F, const KPoly& a, const KPoly& b, KPoly* q,
               KPoly* r) {
  if (b.empty()) throw Error(ErrorCode::kZeroArgument, "polynomial division by zero");
  KPoly rem = a;
  kp_trim(F, rem);
  const int db = kp_degree(b);
  const Elt lead_inv = F.inv(b.back());
  KPoly quot;
  if (kp_degree(rem) >= db) quot.assign(rem.size() - db, Elt{});
  while (kp_degree(rem) >= db) {
    const int shift = kp_degree(rem) - db;
    const Elt c = F.mul(rem.back(), lead_inv);
    quot[shift] = c;
    for (int i = 0; i <= db; ++i) {
      rem[shift + i] = F.sub(rem[shift + i], F.mul(c, b[i]));
    }
    kp_trim(F, rem);
  }
  if (q) {
    kp_trim(F, quot);
    *q = std::move(quot);
  }
  if (r) *r = std::move(rem);
}

KPoly kp_mod(const FieldCtx& F, const KPoly& a, const KPoly& b) {
  KPoly r;
  kp_divmod(F, a, b, nullptr, &r);
  return r;
}

KPoly kp_monic(const FieldCtx& F, const KPoly& a) {
  if (a.empty()) return a;
  const Elt iv = F.inv(a.back());
  KPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], iv);
  return r;
}

KPoly kp_gcd(const FieldCtx& F, KPoly a, KPoly b) {
  kp_trim(F, a);
  kp_trim(F, b);
  while (!b.empty()) {
    KPoly r = kp_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return kp_monic(F, a);
}

KPoly kp_derivative(const FieldCtx& F, const KPoly& a) {
  KPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) {
    r.push_back(F.mul_scalar(a[i], static_cast<std::uint32_t>(i % F.p())));
  }
  kp_trim(F, r);
  return r;
}

Elt kp_eval(const FieldCtx& F, const KPoly& a, const Elt& x) {
  Elt acc;
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

namespace {

KPoly mulmod(const FieldCtx& F, const KPoly& a, const KPoly& b, const KPoly& m) {
  return kp_mod(F, kp_mul(F, a, b), m);
}

// a^p mod m via coefficient Frobenius and precomputed x^{jp} mod m.
KPoly frob_mod(const FieldCtx& F, const KPoly& a, const std::vector<KPoly>& xjp,
               std::size_t deg_m) {
  KPoly r(deg_m);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (F.is_zero(a[j])) continue;
    const Elt c = F.frob(a[j], 1);
    for (std::size_t i = 0; i < xjp[j].size(); ++i) {
      F.add_into(r[i], F.mul(c, xjp[j][i]));
    }
  }
  kp_trim(F, r);
  return r;
}

}  // namespace

KPoly kp_powmod(const FieldCtx& F, const KPoly& base, u64 e, const KPoly& m) {
  KPoly result = kp_mod(F, KPoly{F.one()}, m);
  KPoly b = kp_mod(F, base, m);
  while (e) {
    if (e & 1) result = mulmod(F, result, b, m);
    e >>= 1;
    if (e) b = mulmod(F, b, b, m);
  }
  return result;
}

KPoly kp_x_frobenius(const FieldCtx& F, const KPoly& m, int D) {
  const std::size_t dm = static_cast<std::size_t>(kp_degree(m));
  const KPoly x{Elt{}, F.one()};
  if (dm == 0) return {};
  KPoly xp = kp_powmod(F, x, F.p(), m);
  std::vector<KPoly> xjp(dm);
  xjp[0] = kp_mod(F, KPoly{F.one()}, m);
  for (std::size_t j = 1; j < dm; ++j) xjp[j] = mulmod(F, xjp[j - 1], xp, m);
  KPoly cur = kp_mod(F, x, m);
  for (int i = 0; i < D; ++i) cur = frob_mod(F, cur, xjp, dm);
  return cur;
}

namespace {

Elt subfield_element(const FieldCtx& F, int D, u64 k) {
  if (D == F.n()) return F.decode(k % F.order());
  const auto& s = F.subfield(D);
  return F.embed(D, s.standalone->decode(k % s.standalone->order()));
}

void split_linear(const FieldCtx& F, const KPoly& g, int D, std::vector<Elt>& out) {
  const int dg = kp_degree(g);
  if (dg <= 0) return;
  if (dg == 1) {
    out.push_back(F.neg(F.mul(g[0], F.inv(g[1]))));
    return;
  }
  const u64 Q = F.subfield_order(D);
  for (u64 k = 0;; ++k) {
    const Elt delta = subfield_element(F, D, k);
    KPoly w;
    if (F.p() == 2) {
      KPoly term = kp_mod(F, KPoly{Elt{}, delta}, g);
      w = term;
      for (int i = 1; i < D; ++i) {
        term = mulmod(F, term, term, g);
        w = kp_add(F, w, term);
      }
    } else {
      w = kp_powmod(F, KPoly{delta, F.one()}, (Q - 1) / 2, g);
      w = kp_sub(F, w, KPoly{F.one()});
    }
    KPoly h = kp_gcd(F, w, g);
    const int dh = kp_degree(h);
    if (dh > 0 && dh < dg) {
      KPoly q;
      kp_divmod(F, g, h, &q, nullptr);
      split_linear(F, h, D, out);
      split_linear(F, kp_monic(F, q), D, out);
      return;
    }
    if (k > 4 * Q + 64) {
      throw Error(ErrorCode::kInvalidArgument, "root splitting did not converge");
    }
  }
}

}  // namespace

std::vector<Elt> kp_roots(const FieldCtx& F, const KPoly& f_in, int D) {
  F.require_divisor(D);
  KPoly f = f_in;
  kp_trim(F, f);
  if (f.empty()) throw Error(ErrorCode::kInvalidArgument, "roots of zero polynomial");
  if (kp_degree(f) == 0) return {};
  f = kp_monic(F, f);
  KPoly xq = kp_x_frobenius(F, f, D);
  KPoly h = kp_sub(F, xq, KPoly{Elt{}, F.one()});
  KPoly g = kp_gcd(F, h, f);
  std::vector<Elt> roots;
  split_linear(F, g, D, roots);
  std::sort(roots.begin(), roots.end(), [&](const Elt& a, const Elt& b) {
    return F.encode(a) < F.encode(b);
  });
  return roots;
}

u64 kp_count_roots(const FieldCtx& F, const KPoly& f_in, int D) {
  F.require_divisor(D);
  KPoly f = f_in;
  kp_trim(F, f);
  if (f.empty()) return F.subfield_order(D);
  const int df = kp_degree(f);
  if (df == 0) return 0;
  if (df == 1) {
    const Elt root = F.neg(F.mul(f[0], F.inv(f[1])));
    return F.in_subfield(root, D) ? 1 : 0;
  }
  f = kp_monic(F, f);
  KPoly xq = kp_x_frobenius(F, f, D);
  KPoly h = kp_sub(F, xq, KPoly{Elt{}, F.one()});
  return static_cast<u64>(kp_degree(kp_gcd(F, h, f)));
}

}  // namespace norml
