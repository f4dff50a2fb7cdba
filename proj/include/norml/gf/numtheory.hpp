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

#ifndef NORML_GF_NUMTHEORY_HPP_
#define NORML_GF_NUMTHEORY_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace norml {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

// Deterministic for all 64-bit inputs.
bool is_prime(u64 n);

// Prime factorization, primes ascending.
std::vector<std::pair<u64, int>> factorize(u64 n);

std::vector<u64> divisors(u64 n);

// p^n, or nullopt when the result would exceed `limit`.
std::optional<u64> checked_pow(u64 p, int n, u64 limit = ~u64{0});

// Multiplicative order of q modulo n (n >= 1, gcd(q, n) = 1).
u64 multiplicative_order(u64 q, u64 n);

}  // namespace norml

#endif  // NORML_GF_NUMTHEORY_HPP_
