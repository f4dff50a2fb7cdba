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

#ifndef NORML_TRACE_EXPR_HPP_
#define NORML_TRACE_EXPR_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "norml/chars/characters.hpp"
#include "norml/cyclo/cyc_number.hpp"

namespace norml {

enum class GroupKind { kAdditive, kMultiplicative };

const char* group_name(GroupKind g);
GroupKind parse_group(const std::string& s);

enum class ExprKind {
  kConstant,
  kTwistDeg,
  kArtinSchreier,
  kKummer,
  kPushforwardCount,
  kPushforwardKernel,
  kPunctual,
  kInducedKummer,
  kShift,
  kSum,
  kProduct,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Coefficients constant term first. Entries are encodings in the base field;
// a negative entry -v stands for the additive inverse of encoding v.
using BasePoly = std::vector<std::int64_t>;

struct Expr {
  ExprKind kind = ExprKind::kConstant;
  CycNumber alpha{1L};
  int weight = 0;
  u64 psi_a = 0;
  MultiplicativeCharacter chi;
  BasePoly poly;
  u64 point = 0;
  u64 point_p = 0;
  int point_degree = 1;
  int induced_degree = 1;
  std::vector<ExprPtr> children;
};

namespace ex {
ExprPtr constant();
ExprPtr twist(const CycNumber& alpha, int weight);
ExprPtr artin_schreier(u64 a, BasePoly g);
ExprPtr kummer(const MultiplicativeCharacter& chi, BasePoly g);
ExprPtr count(BasePoly g);
ExprPtr kernel(BasePoly g);
ExprPtr punctual(u64 p, int degree, u64 encoding, const CycNumber& alpha = CycNumber(1L));
ExprPtr induced_kummer(int d, const MultiplicativeCharacter& chi);
ExprPtr shift(ExprPtr e);
ExprPtr sum(std::vector<ExprPtr> es);
ExprPtr product(std::vector<ExprPtr> es);
}  // namespace ex

ExprPtr parse_expr(const std::string& text);
std::string to_sexpr(const Expr& e);

// True iff every leaf is integer-valued.
bool is_integral(const Expr& e);

// Conductor of all values the expression can take over F_p.
u64 expr_conductor(const Expr& e, u64 p);

// Smallest degree over F_p of a field holding every parameter of the
// expression, given the base field degree m0.
int expr_parameter_degree(const Expr& e, int m0);

// Sum of declared weights along products; max over sums.
int declared_weight(const Expr& e);

}  // namespace norml

#endif  // NORML_TRACE_EXPR_HPP_
