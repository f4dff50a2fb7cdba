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
#include "norml/error.hpp"
#include "norml/lfun/lfun.hpp"

using namespace norml;

namespace {

std::vector<CycNumber> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

ErrorCode fit_error(const std::vector<CycNumber>& seq) {
  try {
    fit_rational_model(seq, 3);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("minimal recurrence examples") {
  auto rec = minimal_recurrence(ints({4, 10, 28, 82, 244, 730}));
  CHECK(rec.order == 2);
  CHECK(rec.certified());
  CHECK(rec.characteristic() == ints({3, -4, 1}));
  auto c = minimal_recurrence(ints({5, 5, 5, 5}));
  CHECK(c.order == 1);
  CHECK(c.characteristic() == ints({-1, 1}));
  CHECK(minimal_recurrence(ints({0, 0, 0})).order == 0);
  CHECK_THROWS_AS(minimal_recurrence(ints({1})), Error);
  CHECK(extend(rec, ints({4, 10}), 5) == ints({4, 10, 28, 82, 244}));
}

TEST_CASE("fits and expansions") {
  auto m = fit_rational_model(ints({4, 10, 28, 82, 244, 730}), 3);
  CHECK(m.pole_count() == 2);
  CHECK(m.root_count() == 0);
  REQUIRE(m.blocks.size() == 1);
  CHECK(m.blocks[0].multiplicity == 1);
  for (const auto& ev : m.blocks[0].eigenvalues) {
    REQUIRE(ev.exact);
    CHECK((*ev.exact == CycNumber(1L) || *ev.exact == CycNumber(3L)));
  }
  CHECK(series_expand(m, 5) == ints({4, 10, 28, 82, 244}));
  CHECK(model_to_string(m) == "1 / ((1) + (-4)*T + (3)*T^2)");

  CHECK(fit_rational_model(ints({0, 0, 0, 0}), 3).blocks.empty());
  CHECK(series_expand(RationalModel{}, 3) == ints({0, 0, 0}));

  auto c = fit_rational_model(ints({3, 3, 3, 3}), 3);
  REQUIRE(c.blocks.size() == 1);
  CHECK(c.blocks[0].multiplicity == 3);
  auto neg = fit_rational_model(ints({-2, -2, -2, -2}), 3);
  CHECK(neg.root_count() == 2);

  RationalModel root;
  root.blocks.push_back({ints({-5, 1}), -1, {}});
  CHECK(series_expand(root, 3) == ints({-5, -25, -125}));
}

TEST_CASE("skyscraper asymmetry") {
  const auto sky = ints({1, 0, 1, 0, 1, 0, 1, 0});
  CHECK(minimal_recurrence(sky).certified());
  CHECK(fit_error(sky) == ErrorCode::kNonIntegerMultiplicity);
  auto sq = rth_power_check(sky, 2, 3);
  CHECK(series_expand(sq, 8) == ints({2, 0, 2, 0, 2, 0, 2, 0}));
  REQUIRE(sq.blocks.size() == 2);
  for (const auto& b : sq.blocks) {
    REQUIRE(b.eigenvalues.size() == 1);
    REQUIRE(b.eigenvalues[0].exact);
    CHECK(*b.eigenvalues[0].exact == CycNumber(b.multiplicity > 0 ? 1L : -1L));
  }
  CHECK(model_to_string(sq) == "((1) + (1)*T) / ((1) + (-1)*T)");
  CHECK(rth_power_check(ints({0, 0, 0, 0}), 5, 3).blocks.empty());
  auto same = rth_power_check(ints({4, 10, 28, 82, 244, 730}), 1, 3);
  CHECK(series_expand(same, 6) == ints({4, 10, 28, 82, 244, 730}));
}

TEST_CASE("insufficient terms") {
  CHECK(fit_error(ints({1, 2, 5, 3, 7, 1})) == ErrorCode::kInsufficientTerms);
  CHECK(fit_error(ints({1, 0, 0, 0, 0, 0})) == ErrorCode::kNonIntegerMultiplicity);
}

TEST_CASE("weights") {
  RationalModel m;
  m.blocks.push_back({ints({-3, 1}), 1, {{3.0L, CycNumber(3L)}}});
  m.blocks.push_back({ints({-1, 1}), 1, {{1.0L, CycNumber(1L)}}});
  m.blocks.push_back({ints({3, 0, 1}), -1, {{{0, std::sqrt(3.0L)}, {}}, {{0, -std::sqrt(3.0L)}, {}}}});
  auto rep = classify_weights(m, 3);
  REQUIRE(rep.entries.size() == 4);
  CHECK(rep.entries[0].nearest == 2);
  CHECK(rep.entries[1].nearest == 0);
  CHECK(rep.entries[2].nearest == 1);
  CHECK(rep.integral_weights_ok);
  CHECK(rep.max_weight == doctest::Approx(2));
  CHECK(rep.total_degree == 4);
  m.blocks.push_back({ints({-2, 1}), 1, {{2.0L, CycNumber(2L)}}});
  CHECK_FALSE(classify_weights(m, 3).integral_weights_ok);
}

TEST_CASE("random cyclotomic models round trip") {
  std::mt19937_64 rng(7);
  const u64 M = 12;
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> cnt(1, 4), mag(1, 4), ang(0, M - 1), mult(-3, 3);
    const int n = cnt(rng);
    std::vector<std::pair<CycNumber, int>> eig;
    for (int i = 0; i < n; ++i) {
      CycNumber g = CycNumber::zeta(M, ang(rng)) * CycNumber(static_cast<long>(mag(rng)));
      int k = mult(rng);
      if (k == 0) k = 1;
      bool dup = false;
      for (auto& e : eig) dup |= e.first == g;
      if (!dup) eig.push_back({g, k});
    }
    const int S = 2 * static_cast<int>(eig.size()) + 2;
    std::vector<CycNumber> seq(S);
    for (int s = 0; s < S; ++s) {
      for (auto& [g, k] : eig) seq[s] += g.pow(s + 1) * CycNumber(static_cast<long>(k));
    }
    auto model = fit_rational_model(seq, 4);
    CHECK(series_expand(model, S + 3) == [&] {
      std::vector<CycNumber> v(S + 3);
      for (int s = 0; s < S + 3; ++s) {
        for (auto& [g, k] : eig) v[s] += g.pow(s + 1) * CycNumber(static_cast<long>(k));
      }
      return v;
    }());
    int degree = 0;
    for (auto& e : eig) degree += std::abs(e.second);
    CHECK(model.total_degree() == degree);
    for (const auto& b : model.blocks) {
      for (const auto& ev : b.eigenvalues) {
        REQUIRE(ev.exact);
        bool found = false;
        for (auto& [g, k] : eig) found |= g == *ev.exact && k == b.multiplicity;
        CHECK(found);
      }
    }
  }
}

TEST_CASE("sum sequences fit and predict") {
  struct Case {
    const char* expr;
    GroupKind kind;
    u64 p;
    int r;
    u64 t;
  };
  for (const Case& c : {Case{"(const)", GroupKind::kMultiplicative, 3, 2, 1},
                        Case{"(kummer (chi e=1@5^1) (poly 0 1))", GroupKind::kMultiplicative, 5, 2, 2},
                        Case{"(artin-schreier (psi a=1) (poly 0 1))", GroupKind::kAdditive, 3, 3, 1},
                        Case{"(shift (induced-kummer 1 (chi e=1@3^1)))", GroupKind::kMultiplicative, 3, 2, 2}}) {
    SumSpec spec{parse_expr(c.expr), c.kind, c.p, 1, 1, c.r, c.t};
    auto seq = sum_sequence(spec, 6);
    auto h = held_out_prediction(seq.values);
    CHECK(h.ok);
    auto model = fit_rational_model(seq);
    CHECK(series_expand(model, 6) == seq.values);
    CHECK(classify_weights(model, seq.q).integral_weights_ok);
  }
}

TEST_CASE("twisted induced Kummer model") {
  // Norm power of order-2 induced Kummer on F_3: eigenvalue set times {1, q}.
  SumSpec one{parse_expr("(shift (induced-kummer 1 (chi e=1@3^1)))"), GroupKind::kMultiplicative, 3, 1, 1, 1, 2};
  SumSpec two = one;
  two.r = 2;
  auto s1 = sum_sequence(one, 6), s2 = sum_sequence(two, 6);
  for (int s = 0; s < 6; ++s) CHECK(s2.values[s] == s1.values[s] * CycNumber(1L + static_cast<long>(*checked_pow(3, s + 1))));
  auto m1 = fit_rational_model(s1), m2 = fit_rational_model(s2);
  CHECK(m2.total_degree() == 2 * m1.total_degree());
}
