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

#ifndef NORML_LFUN_CYC_POLY_HPP_
#define NORML_LFUN_CYC_POLY_HPP_

#include <complex>
#include <vector>

#include "norml/cyclo/cyc_number.hpp"

namespace norml {

// Polynomials over Q(zeta), constant term first.
using CPoly = std::vector<CycNumber>;

void cp_trim(CPoly& a);
int cp_degree(const CPoly& a);
CPoly cp_add(const CPoly& a, const CPoly& b);
CPoly cp_sub(const CPoly& a, const CPoly& b);
CPoly cp_mul(const CPoly& a, const CPoly& b);
CPoly cp_scale(const CPoly& a, const CycNumber& s);
void cp_divmod(const CPoly& a, const CPoly& b, CPoly& q, CPoly& r);
CPoly cp_mod(const CPoly& a, const CPoly& b);
CPoly cp_monic(const CPoly& a);
CPoly cp_gcd(CPoly a, CPoly b);
CPoly cp_derivative(const CPoly& a);
CPoly cp_reverse(const CPoly& a, int n);  // x^n a(1/x)
CycNumber cp_eval(const CPoly& a, const CycNumber& x);
// Inverse of a modulo m; a and m coprime.
CPoly cp_invmod(const CPoly& a, const CPoly& m);

// Power sums p_1..p_S of the roots of a monic polynomial.
std::vector<CycNumber> cp_power_sums(const CPoly& monic, int S);

// Roots of a polynomial over C, polished by Newton steps.
std::vector<std::complex<long double>> cp_complex_roots(const CPoly& a);

}  // namespace norml

#endif  // NORML_LFUN_CYC_POLY_HPP_
