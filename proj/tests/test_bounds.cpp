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

#include <random>

#include "doctest.h"
#include "norml/bounds/bounds.hpp"
#include "norml/error.hpp"
#include "norml/gf/tower.hpp"
#include "norml/trace/evaluator.hpp"

using namespace norml;

namespace {

// Series oracle: for each character, multiply mult copies of the series in x, y for
// each block size j, then read sum over y-exponents at x^r.
mpz_class series_oracle(const MonodromyProfile& prof, long r, bool exterior) {
  mpz_class total = 0;
  for (const auto& [chi, blocks] : prof.blocks) {
    std::vector<std::pair<int, int>> sizes{{0, prof.n0(chi)}};
    for (const auto& [j, mult] : blocks) sizes.push_back({j, mult});
    int maxj = 0;
    for (auto& s : sizes) maxj = std::max(maxj, s.first);
    const long Y = r * maxj + 1;
    std::vector<std::vector<mpz_class>> poly(r + 1, std::vector<mpz_class>(Y, 0));
    poly[0][0] = 1;
    for (auto [j, mult] : sizes) {
      for (int c = 0; c < mult; ++c) {
        std::vector<std::vector<mpz_class>> next(r + 1, std::vector<mpz_class>(Y, 0));
        for (long a = 0; a <= r; ++a) {
          for (long b = 0; b < Y; ++b) {
            if (poly[a][b] == 0) continue;
            for (long i = 0; a + i <= r && (!exterior || i <= 1); ++i) {
              if (b + i * j < Y) next[a + i][b + i * j] += poly[a][b];
            }
          }
        }
        poly = std::move(next);
      }
    }
    for (long b = 0; b < Y; ++b) total += poly[r][b] * b;
  }
  return total;
}

MonodromyProfile random_profile(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nn(0, 5), chis(1, 3), blk(0, 3), mult(0, 2);
  MonodromyProfile prof;
  prof.n = nn(rng);
  const int c = chis(rng);
  for (int k = 0; k < c; ++k) {
    std::map<int, int> b;
    int used = 0;
    for (int j = 1; j <= 3; ++j) {
      const int m = std::min(mult(rng), prof.n - used);
      if (m > 0 && blk(rng)) {
        b[j] = m;
        used += m;
      }
    }
    prof.blocks["c" + std::to_string(k)] = b;
  }
  return prof;
}

}  // namespace

TEST_CASE("binomial convention") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(1, 2) == 0);
  CHECK(binom(3, -1) == 0);
  CHECK(binom(-1, 0) == 1);
  CHECK(binom(0, 0) == 1);
}

TEST_CASE("closed-form examples") {
  CHECK(weyl_dim(2, 2, 0) == 3);
  CHECK(weyl_dim(2, 2, 1) == 1);
  CHECK(weyl_dim(3, 3, 1) == 8);
  CHECK_THROWS_AS(weyl_dim(3, 3, 3), Error);
  CHECK(trex1_bound({3, 0, 0, 0}, 2) == 9);
  CHECK(trex1_bound({1, 0, 0, 0}, 2) == 1);
  for (long d = 1; d <= 6; ++d) {
    for (long c = 0; c <= d; ++c) CHECK(trex1_bound({d, 0, c, 0}, 1) == (1 + c) * (d - c));
  }
  CHECK(additive_example_bound(3, 2) == 4);
  CHECK(additive_example_bound(2, 2) == 1);
  CHECK(additive_example_bound(3, 1) == 2);
  CHECK(kummer_example_bound(2, 2) == 3);
  CHECK(kummer_example_bound(1, 2) == 1);
  for (long a = 1; a < 6; ++a) CHECK(kummer_example_bound(a, 1) == 1);
  CHECK(swan_example_bound(3, 2) == 2);
  CHECK(swan_example_bound(4, 2) == 3);
  CHECK(swan_example_bound(3, 1) == 1);
}

TEST_CASE("A and B examples") {
  const auto p3 = pushforward_kernel_profile(3);
  CHECK(p3.n == 2);
  CHECK(formula_A(p3, 1) == 4);
  MonodromyProfile single;
  single.n = 1;
  single.blocks["chi"][1] = 1;
  CHECK(formula_A(single, 2) == 2);
  MonodromyProfile flat;
  flat.n = 3;
  flat.blocks["chi"] = {};
  CHECK(formula_A(flat, 4) == 0);
  CHECK(formula_B(flat, 2) == 0);
  for (long d = 2; d <= 6; ++d) {
    for (long i = 0; i <= d; ++i) CHECK(formula_B(pushforward_kernel_profile(d), i) == 2 * i * binom(d - 1, i));
  }
  CHECK(formula_B(p3, 0) == 0);
  MonodromyProfile two;
  two.n = 2;
  two.blocks["chi"][1] = 2;
  CHECK(formula_B(two, 2) == 2);
  for (long r = 1; r <= 4; ++r) {
    CHECK(formula_M(p3, r, 0) == formula_A(p3, r));
    CHECK(formula_M(p3, r, r) == formula_B(p3, r));
  }
  CHECK(formula_A(p3, 0) == 0);
  CHECK(C_bound_mult(p3, 2) == 16);
  CHECK(normexa1_bound(3, 2) == 16);
  CHECK(C_bound_mult(MonodromyProfile{}, 3) == 0);
  MonodromyProfile bad;
  bad.n = 1;
  bad.blocks["chi"][1] = 2;
  CHECK_THROWS_AS(formula_A(bad, 1), Error);
}

TEST_CASE("closed forms agree with the profile formulas") {
  for (long d = 2; d <= 6; ++d) {
    for (long r = 1; r <= 5; ++r) {
      CAPTURE(d);
      CAPTURE(r);
      CHECK(normexa1_bound(d, r) == C_bound_mult(pushforward_kernel_profile(d), r));
    }
  }
  for (long a = 1; a <= 6; ++a) {
    for (long r = 1; r <= 5; ++r) {
      CAPTURE(a);
      CAPTURE(r);
      CHECK(normexa2_bound(a, r, false) == C_bound_mult(kummer_profile(a, false), r));
      if (a >= 2) CHECK(normexa2_bound(a, r, true) == C_bound_mult(kummer_profile(a, true), r));
    }
  }
  CHECK_THROWS_AS(normexa2_bound(1, 2, true), Error);
}

TEST_CASE("A and B against a series oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const MonodromyProfile prof = random_profile(rng);
    for (long r = 0; r <= 4; ++r) {
      CHECK(formula_A(prof, r) == series_oracle(prof, r, false));
      CHECK(formula_B(prof, r) == series_oracle(prof, r, true));
    }
  }
}

TEST_CASE("A and B are monotone in block multiplicities") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    MonodromyProfile prof = random_profile(rng);
    MonodromyProfile bigger = prof;
    bigger.n += 1;
    auto& b = bigger.blocks.begin()->second;
    b[1 + static_cast<int>(rng() % 3)] += 1;
    for (long r = 0; r <= 4; ++r) {
      CHECK(formula_A(bigger, r) >= formula_A(prof, r));
      CHECK(formula_B(bigger, r) >= formula_B(prof, r));
    }
    MonodromyProfile wider = prof;
    wider.n += 1;
    for (long r = 0; r <= 4; ++r) {
      CHECK(formula_A(wider, r) >= formula_A(prof, r));
      CHECK(formula_B(wider, r) >= formula_B(prof, r));
    }
  }
}

TEST_CASE("critical values") {
  FieldPtr F7 = build_field(7, 1, 0);
  Tower T7(F7, F7);
  auto cv = critical_values(*F7, embed_base_poly(T7, 1, {0, -3, 0, 1}));
  std::set<u64> got;
  for (auto& v : cv) got.insert(F7->encode(v));
  CHECK(got == std::set<u64>{2, 5});
  FieldPtr F5 = build_field(5, 1, 0);
  Tower T5(F5, F5);
  auto sq = critical_values(*F5, embed_base_poly(T5, 1, {0, 0, 1}));
  REQUIRE(sq.size() == 1);
  CHECK(F5->is_zero(sq[0]));
  auto cube = critical_values(*F7, embed_base_poly(T7, 1, {0, 0, 0, 1}));
  REQUIRE(cube.size() == 1);
  CHECK(F7->is_zero(cube[0]));
  try {
    critical_values(*F7, embed_base_poly(T7, 1, {0, -1, 0, 1}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSplittingFieldTooLarge);
  }
  CHECK(critical_splitting_degree(7, 1, {0, -1, 0, 1}) == 2);
  CHECK(critical_splitting_degree(7, 1, {0, -3, 0, 1}) == 1);
  CHECK_THROWS_AS(critical_values(*F7, embed_base_poly(T7, 1, {0, 0, 0, 0, 0, 0, 0, 1})), Error);
}

TEST_CASE("admissible sets") {
  FieldPtr F7 = build_field(7, 1, 0);
  auto add = admissible_set(*F7, {F7->scalar(2), F7->scalar(5)}, 2, GroupKind::kAdditive);
  CHECK(add.excluded == std::set<u64>{0, 3, 4});
  for (long t : {1, 2, 5, 6}) CHECK(add.admissible(F7->scalar(t)));
  auto mul = admissible_set(*F7, {F7->scalar(2), F7->scalar(5)}, 2, GroupKind::kMultiplicative);
  CHECK(mul.excluded == std::set<u64>{3, 4});
  auto one = admissible_set(*F7, {F7->one()}, 5, GroupKind::kMultiplicative);
  CHECK(one.excluded == std::set<u64>{1});
  auto none = admissible_set(*F7, {}, 3, GroupKind::kAdditive);
  for (long t = 0; t < 7; ++t) CHECK(none.admissible(F7->scalar(t)));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Elt> S;
    for (int k = 0; k < 3; ++k) S.push_back(F7->scalar(static_cast<long>(rng() % 7)));
    for (int r = 1; r <= 3; ++r) {
      auto a = admissible_set(*F7, S, r, GroupKind::kAdditive);
      CHECK(a.excluded.size() <= std::min<std::size_t>(7, static_cast<std::size_t>(std::pow(S.size(), r))));
    }
  }
}
