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
#include "norml/chars/characters.hpp"
#include "norml/error.hpp"
#include "norml/sums/norm_sums.hpp"
#include "norml/trace/evaluator.hpp"
#include "norml/harness/random_specs.hpp"

using namespace norml;

namespace {

SumSpec make(const char* expr, GroupKind kind, u64 p, int m, int r, u64 t) {
  SumSpec s;
  s.expr = parse_expr(expr);
  s.kind = kind;
  s.p = p;
  s.m = m;
  s.r = r;
  s.t = t;
  return s;
}

constexpr GroupKind kGm = GroupKind::kMultiplicative;
constexpr GroupKind kA1 = GroupKind::kAdditive;

}  // namespace

TEST_CASE("norm power sums of simple sheaves") {
  CHECK(norm_power_sum(make("(const)", kGm, 3, 1, 2, 1)) == CycNumber(4L));
  for (u64 t = 0; t < 3; ++t) CHECK(norm_power_sum(make("(const)", kA1, 3, 1, 2, t)) == CycNumber(3L));
  CHECK(norm_power_sum(make("(shift (induced-kummer 1 (chi e=1@3^1)))", kGm, 3, 1, 2, 2)) == CycNumber(4L));
  for (u64 t = 0; t < 3; ++t) {
    const CycNumber v = norm_power_sum(make("(artin-schreier (psi a=1) (poly 0 1))", kA1, 3, 1, 2, t));
    CHECK(v == CycNumber(3L) * CycNumber::zeta(3, static_cast<long>(t)));
  }
  CHECK(brute_force_oracle(make("(const)", kGm, 5, 1, 3, 2)) == CycNumber(31L));
  auto k4 = make("(kummer (chi e=1@5^1) (poly 1 0 1))", kGm, 5, 1, 2, 1);
  CHECK(norm_power_sum(k4) == brute_force_oracle(k4));
}

TEST_CASE("sequences") {
  auto seq = sum_sequence(make("(const)", kGm, 3, 1, 2, 1), 4);
  REQUIRE(seq.values.size() == 4);
  CHECK(seq.values[0] == CycNumber(4L));
  CHECK(seq.values[1] == CycNumber(10L));
  CHECK(seq.values[2] == CycNumber(28L));
  CHECK(seq.values[3] == CycNumber(82L));
  CHECK(seq.q == 3);

  // a with a^2 = -1 in F_9.
  FieldPtr F9 = build_field(3, 2, 0);
  u64 a = 0;
  for (u64 c = 1; c < 9; ++c) {
    if (F9->sqr(F9->decode(c)) == F9->scalar(-1)) {
      a = c;
      break;
    }
  }
  REQUIRE(a != 0);
  auto sky = make("(const)", kA1, 3, 1, 2, 0);
  sky.expr = ex::punctual(3, 2, a);
  auto s8 = sum_sequence(sky, 6);
  for (int s = 0; s < 6; ++s) CHECK(s8.values[s] == CycNumber(s % 2 == 0 ? 1L : 0L));

  auto ker = sum_sequence(make("(kernel (poly 0 -3 0 1))", kA1, 7, 1, 1, 0), 2);
  CHECK(ker.values[0] == CycNumber(0L));
  CHECK(ker.values[1] == CycNumber(2L));
}

TEST_CASE("sum errors") {
  CHECK_THROWS_AS(norm_power_sum(make("(const)", kGm, 3, 1, 2, 0)), Error);
  CHECK_THROWS_AS(norm_power_sum(make("(const)", kGm, 4, 1, 2, 1)), Error);
  try {
    brute_force_oracle(make("(const)", kA1, 7, 2, 4, 0));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudgetExceeded);
  }
  const u64 old = max_field_bits();
  set_max_field_bits(20);
  try {
    sum_sequence(make("(const)", kGm, 3, 1, 2, 1), 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegreeTooLarge);
  }
  set_max_field_bits(old);
}

TEST_CASE("additivity and twist rule") {
  auto e1 = parse_expr("(artin-schreier (psi a=2) (poly 0 1 1))");
  auto e2 = parse_expr("(kummer (chi e=1@5^1) (poly 1 1))");
  auto tw = ex::twist(CycNumber::zeta(4, 1) + CycNumber(2L), 1);
  for (int r = 1; r <= 3; ++r) {
    for (u64 t = 1; t < 5; ++t) {
      SumSpec s;
      s.kind = kGm;
      s.p = 5;
      s.r = r;
      s.t = t;
      s.expr = e1;
      const CycNumber v1 = norm_power_sum(s);
      s.expr = e2;
      const CycNumber v2 = norm_power_sum(s);
      s.expr = ex::sum({e1, e2});
      CHECK(norm_power_sum(s) == v1 + v2);
      s.expr = ex::product({tw, e1});
      CHECK(norm_power_sum(s) == (CycNumber::zeta(4, 1) + CycNumber(2L)).pow(r) * v1);
    }
  }
}

TEST_CASE("partition of the big field") {
  for (u64 p : {3, 5}) {
    for (int r = 1; r <= 3; ++r) {
      CycNumber total(1L);
      for (u64 t = 1; t < p; ++t) total += norm_power_sum(make("(const)", kGm, p, 1, r, t));
      CHECK(total == CycNumber(static_cast<long>(*checked_pow(p, r))));
    }
  }
}

TEST_CASE("character inversion identity") {
  const u64 p = 5;
  const int r = 2;
  auto f = parse_expr("(sum (artin-schreier (psi a=1) (poly 0 0 1)) (count (poly 0 0 0 1)))");
  FieldPtr K = build_field(p, 1, 0);
  FieldPtr Kr = build_field(p, r, 0);
  Tower Tk(Kr, K);
  for (u64 e = 0; e < p - 1; ++e) {
    MultiplicativeCharacter chi{p, 1, e};
    CycNumber lhs, rhs;
    for (u64 t = 1; t < p; ++t) {
      SumSpec s{f, kGm, p, 1, 1, r, t};
      lhs += eval_multiplicative(Tk, chi, 1, Tk.up(1, K->decode(t))) * norm_power_sum(s);
    }
    for (u64 c = 1; c < Kr->order(); ++c) {
      const Elt u = Kr->decode(c);
      rhs += eval_multiplicative(Tk, chi, r, u) * evaluate(*f, Tk, 1, r, u, kGm);
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("fast path matches the oracle on random specs") {
  std::mt19937_64 rng(20261016);
  for (int i = 0; i < 100; ++i) {
    const SumSpec s = testing::random_spec(rng);
    CAPTURE(to_sexpr(*s.expr));
    CAPTURE(s.p);
    CAPTURE(s.m);
    CAPTURE(s.r);
    CAPTURE(s.t);
    CHECK(norm_power_sum(s) == brute_force_oracle(s));
  }
}

TEST_CASE("parallel run matches sequential") {
  auto s = make("(product (kummer (chi e=1@7^1) (poly 1 0 1)) (artin-schreier (psi a=3) (poly 0 1 0 1)))",
                kGm, 7, 1, 4, 3);
  const CycNumber seq = norm_power_sum(s, SumOptions{1, 64});
  CHECK(norm_power_sum(s, SumOptions{4, 64}) == seq);
  CHECK(norm_power_sum(s, SumOptions{3, 1000}) == seq);
}
