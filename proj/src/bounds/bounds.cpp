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

#include "norml/bounds/bounds.hpp"

#include <functional>

#include "norml/error.hpp"
#include "norml/gf/tower.hpp"
#include "norml/trace/evaluator.hpp"

namespace norml {

namespace {

// Sum over compositions (i_j) of `total` indexed by `sizes` of weight(i) * sum j i_j.
mpz_class compositions(const std::vector<std::pair<int, int>>& sizes, long total,
                       const std::function<mpz_class(int mult, long i)>& weight) {
  mpz_class out = 0;
  std::vector<long> parts(sizes.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t idx, long left) {
    if (idx + 1 == sizes.size()) {
      parts[idx] = left;
      mpz_class prod = 1, js = 0;
      for (std::size_t k = 0; k < sizes.size(); ++k) {
        prod *= weight(sizes[k].second, parts[k]);
        js += sizes[k].first * parts[k];
      }
      out += prod * js;
      return;
    }
    for (long v = 0; v <= left; ++v) {
      parts[idx] = v;
      rec(idx + 1, left - v);
    }
  };
  if (!sizes.empty()) rec(0, total);
  return out;
}

mpz_class per_character(const MonodromyProfile& prof, long total,
                        const std::function<mpz_class(int, long)>& weight) {
  prof.validate();
  mpz_class out = 0;
  for (const auto& [chi, blocks] : prof.blocks) {
    std::vector<std::pair<int, int>> sizes;
    const int n0 = prof.n0(chi);
    if (n0 > 0) sizes.push_back({0, n0});
    for (const auto& [j, mult] : blocks) {
      if (mult > 0) sizes.push_back({j, mult});
    }
    out += compositions(sizes, total, weight);
  }
  return out;
}

}  // namespace

mpz_class binom(long n, long k) {
  if (k < 0) return 0;
  if (k == 0) return 1;
  if (n < k) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

int MonodromyProfile::n0(const std::string& chi) const {
  int s = 0;
  auto it = blocks.find(chi);
  if (it != blocks.end()) {
    for (const auto& [j, mult] : it->second) s += mult;
  }
  return n - s;
}

void MonodromyProfile::validate() const {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "profile dimension is negative");
  for (const auto& [chi, b] : blocks) {
    for (const auto& [j, mult] : b) {
      if (j < 1 || mult < 0) throw Error(ErrorCode::kInvalidArgument, "bad Jordan block for " + chi);
    }
    if (n0(chi) < 0) throw Error(ErrorCode::kInvalidArgument, "blocks of " + chi + " exceed n");
  }
}

mpz_class weyl_dim(long n, long r, long i) {
  if (i < 0 || i > r - 1) throw Error(ErrorCode::kInvalidArgument, "need 0 <= i <= r-1");
  return binom(n + r - i - 1, r) * binom(r - 1, i);
}

mpz_class trex1_bound(const SheafNumerics& s, long r) {
  if (s.d + s.e - s.c < 0) throw Error(ErrorCode::kInvalidArgument, "need d + e - c >= 0");
  mpz_class sum = 0;
  for (long i = 0; i < r; ++i) {
    sum += (binom(s.d + s.e - s.c + r - i - 1, r) - binom(s.e + r - i - 1, r)) * binom(r - 1, i);
  }
  return (1 + s.c) * sum;
}

mpz_class additive_example_bound(long d, long r) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "need d >= 2");
  mpz_class sum = 0;
  for (long i = 0; i < r; ++i) sum += binom(d + r - i - 2, r) * binom(r - 1, i);
  return sum;
}

mpz_class kummer_example_bound(long a, long r) {
  if (a < 1) throw Error(ErrorCode::kInvalidArgument, "need a >= 1");
  mpz_class sum = 0;
  for (long i = 0; i < r; ++i) sum += binom(a + r - i - 2, r - 1) * binom(r - 1, i);
  return sum;
}

mpq_class swan_example_bound(long d, long r) {
  if (d < 3) throw Error(ErrorCode::kInvalidArgument, "need d >= 3");
  mpq_class v(additive_example_bound(d, r), d - 1);
  v.canonicalize();
  return v;
}

mpz_class formula_A(const MonodromyProfile& prof, long r) {
  return per_character(prof, r, [](int n, long i) { return binom(n + i - 1, i); });
}

mpz_class formula_B(const MonodromyProfile& prof, long i) {
  return per_character(prof, i, [](int n, long k) { return binom(n, k); });
}

mpz_class formula_M(const MonodromyProfile& prof, long r, long i) {
  if (i < 0 || i > r) throw Error(ErrorCode::kInvalidArgument, "need 0 <= i <= r");
  const long n = prof.n;
  return formula_A(prof, r - i) * binom(n, i) + formula_B(prof, i) * binom(n - 1 + r - i, r - i);
}

mpq_class C_bound_mult(const MonodromyProfile& prof, long r) {
  mpz_class sum = 0;
  for (long i = 0; i <= r; ++i) sum += formula_M(prof, r, i);
  mpq_class v(sum, 2);
  v.canonicalize();
  return v;
}

mpq_class normexa1_bound(long d, long r) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "need d >= 2");
  mpz_class sum = 0;
  for (long i = 0; i <= r; ++i) {
    mpz_class inner = 0;
    for (long j = 0; j <= r - i - 1; ++j) inner += binom(d - 3 + j, j) * (r - i - j);
    sum += binom(d - 1, i) * ((r + i) * binom(d - 2 + r - i, r - i) + (d - 1) * inner);
  }
  mpq_class v(sum, 2);
  v.canonicalize();
  return v;
}

mpq_class normexa2_bound(long a, long r, bool same_char) {
  if (a < (same_char ? 2 : 1)) throw Error(ErrorCode::kInvalidArgument, "root count too small");
  mpz_class sum = 0;
  for (long i = 0; i <= r; ++i) {
    mpz_class inner = 0;
    if (!same_char) {
      for (long j = 0; j <= r - i - 1; ++j) inner += binom(a + j - 2, j) * (r - i - j);
      sum += 2 * (binom(a - 1 + r - i, r - i) * binom(a - 1, i - 1) + binom(a, i) * inner);
    } else {
      for (long j = 0; j <= r - i - 1; ++j) inner += binom(a + j - 3, j) * (r + 1 - i - j) * (r - i - j);
      sum += 2 * binom(a - 1 + r - i, r - i) * binom(a - 1, i - 1) + binom(a, i) * inner;
    }
  }
  mpq_class v(sum, 2);
  v.canonicalize();
  return v;
}

MonodromyProfile pushforward_kernel_profile(long d) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "need d >= 2");
  MonodromyProfile prof;
  prof.n = static_cast<int>(d - 1);
  prof.blocks["1"][1] = static_cast<int>(d - 1);
  for (long k = 1; k < d; ++k) prof.blocks["chi^" + std::to_string(k) + "/" + std::to_string(d)][1] = 1;
  return prof;
}

MonodromyProfile kummer_profile(long a, bool same_char) {
  if (a < (same_char ? 2 : 1)) throw Error(ErrorCode::kInvalidArgument, "root count too small");
  MonodromyProfile prof;
  prof.n = static_cast<int>(a);
  if (same_char) {
    prof.blocks["chi^e"][1] = 2;
  } else {
    prof.blocks["chi^e"][1] = 1;
    prof.blocks["chi^d"][1] = 1;
  }
  return prof;
}

std::vector<Elt> critical_values(const FieldCtx& F, const KPoly& g) {
  const int d = kp_degree(g);
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "need deg g >= 2");
  if (static_cast<u64>(d) % F.p() == 0) throw Error(ErrorCode::kInvalidArgument, "deg g divisible by p");
  KPoly h = kp_monic(F, kp_derivative(F, g));
  const auto roots = kp_roots(F, h, F.n());
  for (const Elt& z : roots) {
    const KPoly lin{F.neg(z), F.one()};
    for (;;) {
      KPoly q, r;
      kp_divmod(F, h, lin, &q, &r);
      if (kp_degree(r) >= 0) break;
      h = q;
    }
  }
  if (kp_degree(h) > 0) {
    throw Error(ErrorCode::kSplittingFieldTooLarge, "critical points of g are not all in " + F.descriptor());
  }
  std::set<u64> seen;
  std::vector<Elt> out;
  for (const Elt& z : roots) {
    const Elt v = kp_eval(F, g, z);
    if (seen.insert(F.encode(v)).second) out.push_back(v);
  }
  return out;
}

int critical_splitting_degree(u64 p, int m0, const BasePoly& g, int max_k) {
  for (int k = 1; k <= max_k; ++k) {
    const int n = m0 * k;
    if (!checked_pow(p, n, u64{1} << max_field_bits())) break;
    Tower T(build_field(p, n, 0), build_field(p, m0, 0));
    try {
      critical_values(T.ambient(), embed_base_poly(T, m0, g));
      return n;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSplittingFieldTooLarge) throw;
    }
  }
  throw Error(ErrorCode::kSplittingFieldTooLarge, "no splitting field within the ceiling");
}

AdmissibleSet admissible_set(const FieldCtx& F, const std::vector<Elt>& S, int r, GroupKind kind) {
  AdmissibleSet out;
  out.field = &F;
  if (S.empty() || r < 1) return out;
  std::set<u64> cur;
  for (const Elt& s : S) cur.insert(F.encode(s));
  for (int k = 1; k < r; ++k) {
    std::set<u64> next;
    for (u64 a : cur) {
      for (const Elt& s : S) {
        const Elt v = kind == GroupKind::kAdditive ? F.add(F.decode(a), s) : F.mul(F.decode(a), s);
        next.insert(F.encode(v));
      }
    }
    cur = std::move(next);
  }
  out.excluded = std::move(cur);
  return out;
}

}  // namespace norml
