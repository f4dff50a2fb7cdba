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

#include <numeric>

#include "doctest.h"
#include "norml/error.hpp"
#include "norml/trace/evaluator.hpp"
#include "norml/trace/expr.hpp"

using namespace norml;

namespace {

Tower tower_for(u64 p, int m0, int m, int base) {
  const int n = std::lcm(m0 * m, base);
  return Tower(build_field(p, n, 0), build_field(p, base, 0));
}

}  // namespace

TEST_CASE("parser round trip") {
  for (const char* s : {"(const)", "(kernel (poly 0 -3 0 1))", "(kummer (chi e=2@7^1) (poly 1 1))",
                        "(shift (artin-schreier (psi a=1) (poly 0 0 0 1)))",
                        "(induced-kummer 2 (chi e=1@3^2))", "(punctual a=3@3^2)",
                        "(sum (const) (twist 3 2))", "(product (twist (cyc 3 0 1) 0) (count (poly 0 0 1)))"}) {
    auto e = parse_expr(s);
    CHECK(to_sexpr(*e) == s);
    CHECK(to_sexpr(*parse_expr(to_sexpr(*e))) == s);
  }
  CHECK_THROWS_AS(parse_expr("(kernel (poly 0 1)"), Error);
  CHECK_THROWS_AS(parse_expr("(frobnicate)"), Error);
  CHECK_THROWS_AS(parse_expr("(const) x"), Error);
  try {
    parse_expr("(twist (cyc 1 1) 0)");
    ex::twist(CycNumber(mpq_class(1, 2)), 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTwistNotIntegral);
  }
}

TEST_CASE("is_integral examples") {
  CHECK(is_integral(*parse_expr("(kernel (poly 0 -3 0 1))")));
  CHECK(is_integral(*parse_expr("(kummer (chi e=2@5^1) (poly 1 0 1))")));
  CHECK_FALSE(is_integral(*parse_expr("(artin-schreier (psi a=1) (poly 0 1))")));
  CHECK_FALSE(is_integral(*parse_expr("(kummer (chi e=1@5^1) (poly 0 1))")));
  CHECK(is_integral(*parse_expr("(sum (const) (shift (count (poly 0 0 1))))")));
}

TEST_CASE("pushforward count of x^3 - 3x over F_7") {
  Tower T = tower_for(7, 1, 1, 1);
  auto e = parse_expr("(count (poly 0 -3 0 1))");
  for (long t = 0; t < 7; ++t) {
    long brute = 0;
    for (long x = 0; x < 7; ++x) brute += ((x * x * x - 3 * x) % 7 + 7) % 7 == t;
    CHECK(evaluate(*e, T, 1, 1, T.ambient().scalar(t)) == CycNumber(brute));
  }
  CHECK(evaluate(*e, T, 1, 1, T.ambient().scalar(5)) == CycNumber(2L));
}

TEST_CASE("induced Kummer vanishes off multiples of d") {
  Tower T = tower_for(3, 1, 1, 2);
  auto e = parse_expr("(induced-kummer 2 (chi e=1@3^2))");
  for (long t = 1; t < 3; ++t) {
    CHECK(evaluate(*e, T, 1, 1, T.ambient().scalar(t)).is_zero());
  }
}

TEST_CASE("shifted quadratic Kummer at a non-square") {
  Tower T = tower_for(5, 1, 1, 1);
  auto e = parse_expr("(shift (kummer (chi e=2@5^1) (poly 0 1)))");
  CHECK(evaluate(*e, T, 1, 1, T.ambient().scalar(2), GroupKind::kMultiplicative) == CycNumber(1L));
  CHECK(evaluate(*e, T, 1, 1, T.ambient().scalar(4), GroupKind::kMultiplicative) == CycNumber(-1L));
  try {
    evaluate(*e, T, 1, 1, T.ambient().zero(), GroupKind::kMultiplicative);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kDomainViolation);
  }
}

TEST_CASE("evaluation is additive") {
  Tower T = tower_for(5, 1, 2, 1);
  const FieldCtx& A = T.ambient();
  auto e1 = parse_expr("(artin-schreier (psi a=2) (poly 1 0 3))");
  auto e2 = parse_expr("(kummer (chi e=1@5^1) (poly 2 1))");
  auto s = ex::sum({e1, e2});
  auto pr = ex::product({e1, e2});
  for (u64 c = 0; c < A.order(); ++c) {
    const Elt t = A.decode(c);
    const CycNumber v1 = evaluate(*e1, T, 1, 2, t), v2 = evaluate(*e2, T, 1, 2, t);
    CHECK(evaluate(*s, T, 1, 2, t) == v1 + v2);
    CHECK(evaluate(*pr, T, 1, 2, t) == v1 * v2);
    CHECK(evaluate(*ex::shift(e1), T, 1, 2, t) == -v1);
  }
}

TEST_CASE("pushforward counts sum to the field size") {
  for (auto [p, g] : std::vector<std::pair<u64, const char*>>{
           {7, "(count (poly 0 -3 0 1))"}, {5, "(count (poly 0 0 1))"}, {3, "(count (poly 1 1 0 1))"},
           {5, "(count (poly 2))"}, {3, "(count (poly 0 2))"}}) {
    auto e = parse_expr(g);
    for (int m = 1; m <= 3; ++m) {
      Tower T = tower_for(p, 1, m, 1);
      const FieldCtx& A = T.ambient();
      CycNumber total;
      for (u64 c = 0; c < A.order(); ++c) total += evaluate(*e, T, 1, m, A.decode(c));
      CHECK(total == CycNumber(static_cast<long>(A.order())));
    }
  }
}

TEST_CASE("character inversion through Kummer sheaves") {
  for (u64 p : {5, 7}) {
    Tower T = tower_for(p, 1, 1, 1);
    for (u64 t = 1; t < p; ++t) {
      CycNumber s;
      for (u64 e = 0; e + 1 < p; ++e) {
        auto k = ex::kummer(MultiplicativeCharacter{p, 1, e}, {0, 1});
        s += evaluate(*k, T, 1, 1, T.ambient().scalar(static_cast<long>(t)));
      }
      CHECK(s == CycNumber(t == 1 ? static_cast<long>(p - 1) : 0L));
    }
  }
}

TEST_CASE("induced Kummer matches conjugate-sum oracle") {
  const u64 q = 3;
  for (u64 e : {1, 2, 4}) {
    MultiplicativeCharacter chi{3, 2, e};
    auto ik = ex::induced_kummer(2, chi);
    for (int m = 1; m <= 4; ++m) {
      Tower T = tower_for(3, 1, m, 2);
      const FieldCtx& A = T.ambient();
      const int D = m;
      for (u64 c = 1; c < A.order(); ++c) {
        const Elt t = A.decode(c);
        if (!A.in_subfield(t, D)) continue;
        CycNumber want;
        if (m % 2 == 0) {
          const Elt y = A.pow(t, (A.subfield_order(D) - 1) / (A.subfield_order(2) - 1));
          for (u64 i = 0, qi = 1; i < 2; ++i, qi *= q) {
            want += eval_multiplicative(T, chi.power(qi), 1, y);
          }
        }
        CHECK(evaluate(*ik, T, 1, m, t) == want);
      }
    }
  }
}

TEST_CASE("punctual and twist leaves") {
  Tower T = tower_for(3, 1, 2, 2);
  const FieldCtx& A = T.ambient();
  auto pt = parse_expr("(punctual a=3@3^2 (zeta 3 1))");
  const Elt a = T.up(2, T.standalone(2)->decode(3));
  int hits = 0;
  for (u64 c = 0; c < 9; ++c) {
    const CycNumber v = evaluate(*pt, T, 1, 2, A.decode(c));
    if (A.decode(c) == a) {
      CHECK(v == CycNumber::zeta(3, 2));
      ++hits;
    } else {
      CHECK(v.is_zero());
    }
  }
  CHECK(hits == 1);
  auto tw = parse_expr("(twist 3 2)");
  CHECK(evaluate(*tw, T, 1, 2, A.one()) == CycNumber(9L));
  CHECK(declared_weight(*parse_expr("(product (twist 3 2) (sum (twist 1 0) (twist 2 1)))")) == 3);
}
