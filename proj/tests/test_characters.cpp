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

#include <cmath>
#include <random>

#include "doctest.h"
#include "norml/chars/characters.hpp"
#include "norml/cyclo/cyc_number.hpp"
#include "norml/error.hpp"
#include "norml/gf/tower.hpp"

using namespace norml;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<long>{1, 0, 1});
  CHECK(cyclotomic_poly(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomic_poly(8) == std::vector<long>{1, 0, 0, 0, 1});
  CHECK(cyclotomic_poly(12).size() == 5);
  for (std::uint64_t M = 1; M < 40; ++M) {
    CHECK(cyclotomic_poly(M).size() == euler_phi(M) + 1);
  }
}

TEST_CASE("CycNumber ring arithmetic") {
  const CycNumber z3 = CycNumber::zeta(3, 1);
  CHECK(z3.pow(3) == CycNumber(1L));
  CHECK((CycNumber(1L) + z3 + z3 * z3).is_zero());
  const CycNumber i = CycNumber::zeta(4, 1);
  CHECK(i * i == CycNumber(-1L));
  CHECK(CycNumber::zeta(8, 2) == i);
  CHECK(CycNumber::zeta(6, 3) == CycNumber(-1L));
  CHECK((z3 * i).conductor() == 12);
  CHECK((z3 * i).pow(12) == CycNumber(1L));
  const CycNumber a = CycNumber(2L) + z3 * CycNumber(mpq_class(1, 3));
  CHECK(a * a.inverse() == CycNumber(1L));
  CHECK((a / a) == CycNumber(1L));
  CHECK(std::abs(z3.to_complex() - std::polar(1.0, 2 * M_PI / 3)) < 1e-12);
  CHECK(std::abs((a * a.conj()).to_complex().imag()) < 1e-12);
  CHECK((a * a.conj()).is_rational());
  // Canonical form: the same value from two conductors.
  CHECK(CycNumber::zeta(12, 4).normalized().conductor() == 3);
  CHECK(CycNumber::zeta(12, 4).normalized() == z3);
  CHECK(CycNumber::zeta(6, 2).to_string() == "z3");
}

TEST_CASE("CycNumber matches complex embedding on random products") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    const std::uint64_t M1 = 1 + rng() % 24, M2 = 1 + rng() % 24;
    std::vector<std::int64_t> r1(M1), r2(M2);
    for (auto& v : r1) v = static_cast<std::int64_t>(rng() % 7) - 3;
    for (auto& v : r2) v = static_cast<std::int64_t>(rng() % 7) - 3;
    CycNumber a = CycNumber::from_powers(M1, r1);
    CycNumber b = CycNumber::from_powers(M2, r2);
    std::complex<double> ca = 0, cb = 0;
    for (std::uint64_t k = 0; k < M1; ++k) ca += double(r1[k]) * std::polar(1.0, 2 * M_PI * k / M1);
    for (std::uint64_t k = 0; k < M2; ++k) cb += double(r2[k]) * std::polar(1.0, 2 * M_PI * k / M2);
    CHECK(std::abs((a * b).to_complex() - ca * cb) < 1e-9);
    CHECK(std::abs((a + b).to_complex() - (ca + cb)) < 1e-9);
    CHECK((a * b).normalized() == a * b);
  }
}

namespace {

Tower make_tower(u64 p, int n, int base) {
  return Tower(build_field(p, n, 0), build_field(p, base, 0));
}

}  // namespace

TEST_CASE("additive characters") {
  Tower T = make_tower(3, 2, 1);
  const FieldCtx& A = T.ambient();
  AdditiveCharacter trivial{3, 1, 0};
  AdditiveCharacter psi1{3, 1, 1};
  for (u64 e = 0; e < 9; ++e) CHECK(eval_additive(T, trivial, 2, A.decode(e)) == CycNumber(1L));
  CHECK(eval_additive(T, psi1, 1, A.one()) == CycNumber::zeta(3, 1));
  CycNumber sum;
  for (u64 e = 0; e < 9; ++e) sum += eval_additive(T, psi1, 2, A.decode(e));
  CHECK(sum.is_zero());
  for (u64 x = 0; x < 9; ++x) {
    for (u64 y = 0; y < 9; ++y) {
      const Elt ex = A.decode(x), ey = A.decode(y);
      CHECK(eval_additive(T, psi1, 2, A.add(ex, ey)) ==
            eval_additive(T, psi1, 2, ex) * eval_additive(T, psi1, 2, ey));
    }
  }
  CHECK_THROWS_AS(eval_additive(T, psi1, 1, A.x()), Error);
}

TEST_CASE("multiplicative characters") {
  Tower T = make_tower(5, 2, 1);
  const FieldCtx& A = T.ambient();
  MultiplicativeCharacter quad{5, 1, 2};
  CHECK(quad.order() == 2);
  CHECK(eval_multiplicative(T, quad, 1, A.scalar(4)) == CycNumber(1L));
  CHECK(eval_multiplicative(T, quad, 1, A.scalar(2)) == CycNumber(-1L));
  CycNumber s;
  for (int v = 1; v < 5; ++v) s += eval_multiplicative(T, quad, 1, A.scalar(v));
  CHECK(s.is_zero());
  try {
    eval_multiplicative(T, quad, 1, A.zero());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroArgument);
  }
  // Norm compatibility: extension value equals base value at the norm.
  MultiplicativeCharacter chi4{5, 1, 1};
  for (u64 e = 1; e < 25; ++e) {
    const Elt x = A.decode(e);
    CHECK(eval_multiplicative(T, chi4, 2, x) ==
          eval_multiplicative(T, chi4, 1, A.pow(x, 6)));
  }
  // Orthogonality on the extension field for every nontrivial character of F_5.
  for (u64 ee = 1; ee < 4; ++ee) {
    MultiplicativeCharacter chi{5, 1, ee};
    CycNumber t;
    for (u64 e = 1; e < 25; ++e) t += eval_multiplicative(T, chi, 2, A.decode(e));
    CHECK(t.is_zero());
  }
}

TEST_CASE("character order and minimal degree") {
  CHECK(char_order(MultiplicativeCharacter{5, 1, 0}) == 1);
  MultiplicativeCharacter c{5, 1, 1};
  CHECK(char_order(c) == 4);
  CHECK(c.min_degree_over(3) == 2);
  CHECK(char_order(MultiplicativeCharacter{3, 2, 4}) == 2);
  CHECK(char_order(MultiplicativeCharacter{3, 2, 1}) == 8);
  CHECK(parse_multiplicative("chi:e=2@7^1").order() == 3);
  CHECK(parse_multiplicative("e=1@3^2").order() == 8);
  CHECK(parse_additive("psi:a=2", 5, 1).a == 2);
  CHECK_THROWS_AS(parse_multiplicative("chi:e=x@3"), Error);
}

TEST_CASE("extension-field characters through a tower") {
  // chi on F_9 evaluated inside F_81 agrees with a direct dlog in F_9.
  Tower T = make_tower(3, 4, 2);
  const FieldCtx& A = T.ambient();
  auto K = T.standalone(2);
  MultiplicativeCharacter chi{3, 2, 1};
  for (u64 e = 1; e < 9; ++e) {
    const Elt y = K->decode(e);
    u64 j = 0;
    Elt cur = K->one();
    while (cur != y) {
      cur = K->mul(cur, K->generator());
      ++j;
    }
    CHECK(eval_multiplicative(T, chi, 1, T.up(2, y)) == CycNumber::zeta(8, static_cast<std::int64_t>(j)));
  }
  // Multiplicativity on F_81.
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    const Elt x = A.decode(1 + rng() % 80), y = A.decode(1 + rng() % 80);
    CHECK(eval_multiplicative(T, chi, 2, A.mul(x, y)) ==
          eval_multiplicative(T, chi, 2, x) * eval_multiplicative(T, chi, 2, y));
  }
}
