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

#ifndef NORML_GF_POLY_HPP_
#define NORML_GF_POLY_HPP_

#include <vector>

#include "norml/gf/field.hpp"

namespace norml {

// Coefficients low degree first; the zero polynomial is empty.
using KPoly = std::vector<Elt>;

void kp_trim(const FieldCtx& F, KPoly& a);
int kp_degree(const KPoly& a);
KPoly kp_add(const FieldCtx& F, const KPoly& a, const KPoly& b);
KPoly kp_sub(const FieldCtx& F, const KPoly& a, const KPoly& b);
KPoly kp_mul(const FieldCtx& F, const KPoly& a, const KPoly& b);
void kp_divmod(const FieldCtx& F, const KPoly& a, const KPoly& b, KPoly* q,
               KPoly* r);
KPoly kp_mod(const FieldCtx& F, const KPoly& a, const KPoly& b);
KPoly kp_monic(const FieldCtx& F, const KPoly& a);
KPoly kp_gcd(const FieldCtx& F, KPoly a, KPoly b);
KPoly kp_derivative(const FieldCtx& F, const KPoly& a);
KPoly kp_powmod(const FieldCtx& F, const KPoly& base, u64 e, const KPoly& m);
Elt kp_eval(const FieldCtx& F, const KPoly& a, const Elt& x);

// x^(p^D) mod m.
KPoly kp_x_frobenius(const FieldCtx& F, const KPoly& m, int D);

// Distinct roots lying in the degree-D subfield, ascending by encoding.
std::vector<Elt> kp_roots(const FieldCtx& F, const KPoly& f, int D);

// Number of distinct roots in the degree-D subfield. A zero polynomial has
// every element as a root.
u64 kp_count_roots(const FieldCtx& F, const KPoly& f, int D);

}  // namespace norml

#endif  // NORML_GF_POLY_HPP_
