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

#include "doctest.h"
#include "norml/error.hpp"
#include "norml/harness/experiments.hpp"

using namespace norml;

namespace {

json strip_timing(json j) {
  for (auto& e : j["experiments"]) e.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("fiber sizes") {
  auto a = exp_fibers(3, 1, 1, 2);
  CHECK(a.pass());
  CHECK(a.summary["norm_expected"] == 4);
  CHECK(a.summary["trace_expected"] == 3);
  CHECK(a.records.size() == 3);
  CHECK(exp_fibers(5, 1, 1, 3).summary["norm_expected"] == 31);
  auto c = exp_fibers(7, 1, 2, 2);
  CHECK(c.pass());
  CHECK(c.summary["norm_expected"] == 50);
  CHECK(c.records[1]["norm_fiber"] == 50);
}

TEST_CASE("induced Kummer identity and vanishing") {
  auto R = exp_negligible_kummer(3, 1, {3, 2, 1}, 2, 1, 2);
  CHECK(R.pass());
  CHECK(R.parameters["vanishing_regime"] == true);
  for (const auto& rec : R.records) CHECK(rec["sum"]["text"] == "0");
  auto small = exp_negligible_kummer(3, 1, {3, 1, 1}, 1, 1, 2);
  CHECK(small.pass());
  CHECK(small.records[0]["sum"]["text"] == "-4");
  auto triv = exp_negligible_kummer(5, 1, {5, 1, 0}, 1, 1, 2);
  CHECK(triv.pass());
}

TEST_CASE("Artin-Schreier scaling") {
  auto R = exp_artin_schreier_scaling(3, 1, 1, {0, 1}, 1, 2);
  CHECK(R.pass());
  REQUIRE(R.records.size() == 3);
  CHECK(R.records[0]["sum"]["text"] == "3");
  CHECK(exp_artin_schreier_scaling(5, 1, 2, {0, 2}, 1, 2).pass());
  auto triv = exp_artin_schreier_scaling(5, 1, 0, {0, 1}, 1, 3);
  for (const auto& rec : triv.records) CHECK(rec["sum"]["text"] == "25");
  CHECK_THROWS_AS(exp_artin_schreier_scaling(3, 1, 1, {0, 0, 1}, 1, 2), Error);
}

TEST_CASE("rationality of the constant sheaf") {
  SumSpec s;
  s.expr = ex::constant();
  s.p = 3;
  s.r = 2;
  auto R = exp_rationality(s, {1, 2}, 8);
  CHECK(R.pass());
  const auto& rec = R.records[0];
  CHECK(rec["model"]["pole_count"] == 2);
  CHECK(rec["weights"]["max_weight"].get<double>() == doctest::Approx(2.0));
  RationalityLimits lim;
  lim.weight_ceiling = 1.0;
  CHECK_FALSE(exp_rationality(s, {1}, 8, lim).pass());
  lim = {};
  lim.degree_bound = 1;
  CHECK_FALSE(exp_rationality(s, {1}, 8, lim).pass());
  auto shallow = exp_rationality(s, {1}, 5);
  CHECK_FALSE(shallow.pass());
  CHECK(shallow.failures[0].find("no rational fit at tested depth") != std::string::npos);
}

TEST_CASE("bound experiments") {
  auto add = exp_additive_bound(7, 1, {0, -3, 0, 1}, 1, 2);
  CHECK(add.pass());
  CHECK(add.summary["curve_identity"]["holds"] == true);
  CHECK(add.summary["curve_identity"]["points"] == 105);
  auto sq = exp_additive_bound(3, 1, {0, 0, 1}, 1, 2);
  CHECK(sq.pass());
  CHECK(sq.parameters["bound_constant"] == "1");
  auto mul = exp_multiplicative_bound(7, 1, {0, -3, 0, 1}, 1, 2, 2);
  CHECK(mul.pass());
  CHECK(mul.parameters["bound_constant"] == "16");
  CHECK(mul.summary["superelliptic_identity"]["roots_in_k_mr"] == 3);
  CHECK(mul.summary["superelliptic_identity"]["holds"] == true);
  auto kb = exp_kummer_bound(5, 1, {5, 1, 2}, {1, 1}, 1, 2);
  CHECK(kb.pass());
  CHECK(kb.parameters["a"] == 1);
  CHECK(kb.parameters["same_char"] == false);
  auto kb2 = exp_kummer_bound(7, 1, {7, 1, 3}, {0, 0, 1, 1}, 1, 2);
  CHECK(kb2.pass());
  CHECK(kb2.parameters["e"] == 2);
}

TEST_CASE("descent comparison") {
  auto R = exp_weil_descent_comparison(3, 1, 3);
  CHECK(R.pass());
  CHECK(R.records[0]["exact"] == 4);
  CHECK(R.records[0]["descent_estimate"] == 4);
  CHECK(R.records[1]["exact"] == 13);
  CHECK(R.records[1]["descent_estimate"] == 16);
  bool seen = false;
  for (const auto& row : R.summary["bound_table"]) {
    if (row["d"] == 3 && row["r"] == 2) {
      CHECK(row["normexa1"] == "16");
      CHECK(row["descent"] == "8");
      seen = true;
    }
  }
  CHECK(seen);
}

TEST_CASE("reports are deterministic and independent of jobs") {
  HarnessOptions one{7, 1, 12}, many{7, 3, 12};
  std::vector<ExperimentReport> a = {exp_oracle_equivalence(7, 20, one),
                                     exp_negligible_kummer(5, 1, {5, 1, 1}, 1, 2, 2, one)};
  std::vector<ExperimentReport> b = {exp_oracle_equivalence(7, 20, many),
                                     exp_negligible_kummer(5, 1, {5, 1, 1}, 1, 2, 2, many)};
  const json ja = strip_timing(report_document(a, one));
  const json jb = strip_timing(report_document(b, one));
  CHECK(ja == jb);
  CHECK(ja["schema"] == "norml-report/1");
  CHECK(ja["pass"] == true);
  CHECK(ja["tool"]["seed"] == 7);
}

TEST_CASE("formula cross-check") {
  auto R = exp_formula_crosscheck(4, 3);
  CHECK(R.pass());
  CHECK(R.records.size() == 30);
}
