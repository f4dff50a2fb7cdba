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

#ifndef NORML_HARNESS_RANDOM_SPECS_HPP_
#define NORML_HARNESS_RANDOM_SPECS_HPP_

#include <random>

#include "norml/sums/norm_sums.hpp"

namespace norml::testing {

inline BasePoly random_poly(std::mt19937_64& rng, u64 p, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<u64> coef(0, p - 1);
  BasePoly g(deg(rng) + 1);
  for (auto& c : g) c = static_cast<std::int64_t>(coef(rng));
  if (g.size() > 1 && g.back() == 0) g.back() = 1;
  return g;
}

inline ExprPtr random_leaf(std::mt19937_64& rng, u64 p) {
  std::uniform_int_distribution<int> pick(0, 7);
  std::uniform_int_distribution<u64> any(0, 1u << 20);
  switch (pick(rng)) {
    case 0: return ex::constant();
    case 1: return ex::twist(CycNumber(static_cast<long>(any(rng) % 3) - 1), 0);
    case 2: return ex::artin_schreier(any(rng) % p, random_poly(rng, p, 3));
    case 3: return ex::kummer(MultiplicativeCharacter{p, 1, any(rng) % (p - 1)}, random_poly(rng, p, 2));
    case 4: return ex::count(random_poly(rng, p, 3));
    case 5: return ex::kernel(random_poly(rng, p, 3));
    case 6: {
      const int e = 1 + static_cast<int>(any(rng) % 2);
      return ex::punctual(p, e, any(rng) % (e == 1 ? p : p * p), CycNumber(1L));
    }
    default: {
      const int d = 1 + static_cast<int>(any(rng) % 2);
      const u64 n = (d == 1 ? p : p * p) - 1;
      return ex::induced_kummer(d, MultiplicativeCharacter{p, d, any(rng) % n});
    }
  }
}

inline ExprPtr random_expr(std::mt19937_64& rng, u64 p, int depth = 2) {
  std::uniform_int_distribution<int> pick(0, 3);
  const int k = depth > 0 ? pick(rng) : 0;
  switch (k) {
    case 1: return ex::sum({random_expr(rng, p, depth - 1), random_expr(rng, p, depth - 1)});
    case 2: return ex::product({random_expr(rng, p, depth - 1), random_expr(rng, p, depth - 1)});
    case 3: return ex::shift(random_expr(rng, p, depth - 1));
    default: return random_leaf(rng, p);
  }
}

// q in {3,5,7}, m*r <= 6, k_{mr} within 2^22 elements.
inline SumSpec random_spec(std::mt19937_64& rng) {
  static const u64 primes[] = {3, 5, 7};
  std::uniform_int_distribution<int> pi(0, 2);
  std::uniform_int_distribution<u64> any(0, 1u << 30);
  SumSpec s;
  s.p = primes[pi(rng)];
  s.m0 = 1;
  s.kind = any(rng) % 2 ? GroupKind::kMultiplicative : GroupKind::kAdditive;
  do {
    s.m = 1 + static_cast<int>(any(rng) % 3);
    s.r = 1 + static_cast<int>(any(rng) % 4);
  } while (s.m * s.r > 6);
  const u64 km = *checked_pow(s.p, s.m);
  s.t = s.kind == GroupKind::kMultiplicative ? 1 + any(rng) % (km - 1) : any(rng) % km;
  s.expr = random_expr(rng, s.p);
  return s;
}

}  // namespace norml::testing

#endif  // NORML_HARNESS_RANDOM_SPECS_HPP_
