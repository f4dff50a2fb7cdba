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

#ifndef NORML_HARNESS_EXPERIMENTS_HPP_
#define NORML_HARNESS_EXPERIMENTS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "norml/bounds/bounds.hpp"
#include "norml/lfun/lfun.hpp"
#include "norml/sums/norm_sums.hpp"

namespace norml {

using nlohmann::json;

inline constexpr const char* kReportSchema = "norml-report/1";
inline constexpr const char* kVersion = "0.1.0";

struct HarnessOptions {
  u64 seed = 0;
  unsigned jobs = 1;
  int precision = 12;
};

struct ExperimentReport {
  std::string id;
  json parameters = json::object();
  json records = json::array();
  json summary = json::object();
  std::vector<std::string> failures;
  double runtime_s = 0;

  bool pass() const { return failures.empty(); }
  json to_json() const;
};

json cyc_to_json(const CycNumber& z, int precision = 12);
json sequence_to_json(const std::vector<CycNumber>& v, int precision = 12);
json model_to_json(const RationalModel& model, int precision = 12);
json weights_to_json(const WeightReport& w);

// Fiber sizes in k_{mr}/k_m, by direct histogram and by enumeration.
ExperimentReport exp_fibers(u64 p, int m0, int m, int r);

// Sum of the shifted induced Kummer expression over every norm fiber
// against the scaled base value.
ExperimentReport exp_negligible_kummer(u64 p, int m0, const MultiplicativeCharacter& chi, int d,
                                       int m, int r, const HarnessOptions& opt = {});

// Trace sums of psi(g) for linear g against q^{m(r-1)} times the base value.
ExperimentReport exp_artin_schreier_scaling(u64 p, int m0, u64 a, const BasePoly& g, int m, int r,
                                            const HarnessOptions& opt = {});

struct RationalityLimits {
  std::optional<int> degree_bound;
  std::optional<double> weight_ceiling;
  double tolerance = 1e-6;
};

// Sequences for each t; held-out prediction, certified fit and weights.
ExperimentReport exp_rationality(const SumSpec& spec, const std::vector<u64>& ts, int S,
                                 const RationalityLimits& lim = {}, const HarnessOptions& opt = {});

// The plain fit must fail and the r-th power fit must succeed.
ExperimentReport exp_power_asymmetry(const SumSpec& spec, int S, int power,
                                     const HarnessOptions& opt = {});

// #{x in k_{mr} : Tr g(x) = t} against the bound for admissible t, plus the
// Artin-Schreier curve identity.
ExperimentReport exp_additive_bound(u64 p, int m0, const BasePoly& g, int m, int r,
                                    const HarnessOptions& opt = {});

// #{x in k_{mr} : N g(x) = t} against the pushforward-kernel bound, plus the
// superelliptic identity for exponent e.
ExperimentReport exp_multiplicative_bound(u64 p, int m0, const BasePoly& g, int m, int r, int e,
                                          const HarnessOptions& opt = {});

// sum_{N x = t} chi(N g(x)) against the Kummer bound, g with a distinct
// nonzero roots and x^e exactly dividing g.
ExperimentReport exp_kummer_bound(u64 p, int m0, const MultiplicativeCharacter& chi,
                                  const BasePoly& g, int m, int r, const HarnessOptions& opt = {});

// Norm-one count against the descent estimates, and the bound table.
ExperimentReport exp_weil_descent_comparison(u64 p, int m0, int r);

// Library sums against the brute-force oracle on random specifications.
ExperimentReport exp_oracle_equivalence(u64 seed, int cases, const HarnessOptions& opt = {});

// Closed forms against the general counting formulas.
ExperimentReport exp_formula_crosscheck(int max_d, int max_r);

json report_document(const std::vector<ExperimentReport>& reports, const HarnessOptions& opt);

}  // namespace norml

#endif  // NORML_HARNESS_EXPERIMENTS_HPP_
