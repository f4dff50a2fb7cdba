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

#ifndef NORML_SUMS_NORM_SUMS_HPP_
#define NORML_SUMS_NORM_SUMS_HPP_

#include <string>
#include <vector>

#include "norml/gf/tower.hpp"
#include "norml/trace/expr.hpp"

namespace norml {

struct SumSpec {
  ExprPtr expr;
  GroupKind kind = GroupKind::kMultiplicative;
  u64 p = 0;
  int m0 = 1;  // q = p^m0
  int m = 1;
  int r = 1;
  u64 t = 0;  // encoding in the standalone F_{q^m}
};

struct SumOptions {
  unsigned jobs = 1;
  u64 chunk = u64{1} << 15;
};

struct CoefficientSequence {
  std::vector<CycNumber> values;
  u64 q = 0;
  int m = 1;
  int r = 1;
  u64 t = 0;
  GroupKind kind = GroupKind::kMultiplicative;
  std::string fingerprint;
  bool exact = true;
};

void validate(const SumSpec& spec);
u64 sum_q(const SumSpec& spec);

// Tower whose ambient holds k_{msr}; base holds k_m and all parameters.
Tower sum_tower(const SumSpec& spec, int s = 1);
Elt embed_argument(const SumSpec& spec, const Tower& T);

CycNumber norm_power_sum(const SumSpec& spec, const SumOptions& opt = {});
// Value at base degree m*s inside a prepared tower.
CycNumber norm_power_sum(const SumSpec& spec, const Tower& T, int s, const SumOptions& opt = {});

CoefficientSequence sum_sequence(const SumSpec& spec, int S, const SumOptions& opt = {});

CycNumber brute_force_oracle(const SumSpec& spec);

}  // namespace norml

#endif  // NORML_SUMS_NORM_SUMS_HPP_
