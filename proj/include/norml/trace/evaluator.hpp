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

#ifndef NORML_TRACE_EVALUATOR_HPP_
#define NORML_TRACE_EVALUATOR_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "norml/gf/poly.hpp"
#include "norml/gf/tower.hpp"
#include "norml/trace/expr.hpp"

namespace norml {

// Integer combination sum_k a[k] zeta_M^k.
using RawCyc = std::vector<std::int64_t>;

CycNumber raw_to_cyc(u64 M, const RawCyc& raw);
RawCyc cyc_to_raw(u64 M, const CycNumber& v);

// An expression compiled for one field k_level inside a tower. The base
// field k has degree m0 over F_p; arguments lie in the degree level*m0
// subfield of the ambient field.
class LevelEvaluator {
 public:
  LevelEvaluator(const Expr& e, const Tower& T, int m0, int level, u64 conductor = 0);
  ~LevelEvaluator();
  LevelEvaluator(const LevelEvaluator&) = delete;
  LevelEvaluator& operator=(const LevelEvaluator&) = delete;

  u64 conductor() const { return M_; }
  int level() const { return level_; }
  // acc[k] += coefficient of zeta_M^k in the value at u.
  void accumulate(const Elt& u, std::int64_t* acc) const;
  CycNumber evaluate(const Elt& u) const;

  struct Node;

 private:
  const Tower* T_;
  int m0_;
  int level_;
  u64 M_;
  std::unique_ptr<Node> root_;
};

// f(k_m, t) for t given as an element of the ambient field.
CycNumber evaluate(const Expr& e, const Tower& T, int m0, int m, const Elt& t,
                   GroupKind kind = GroupKind::kAdditive);

// Embedded base-field polynomial.
KPoly embed_base_poly(const Tower& T, int m0, const BasePoly& g);

}  // namespace norml

#endif  // NORML_TRACE_EVALUATOR_HPP_
