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

#ifndef NORML_BOUNDS_BOUNDS_HPP_
#define NORML_BOUNDS_BOUNDS_HPP_

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "norml/gf/field.hpp"
#include "norml/gf/poly.hpp"
#include "norml/trace/expr.hpp"

namespace norml {

// C(n, k): 0 for k < 0 or 0 <= n < k, 1 for k = 0.
mpz_class binom(long n, long k);

struct MonodromyProfile {
  int n = 0;
  // character label -> (block size j >= 1 -> multiplicity)
  std::map<std::string, std::map<int, int>> blocks;

  int n0(const std::string& chi) const;
  void validate() const;
};

struct SheafNumerics {
  long d = 1;  // generic rank
  long e = 0;  // minus the Euler characteristic
  long c = 0;  // Swan conductor at infinity
  long a = 0;  // finite ramification points
};

mpz_class weyl_dim(long n, long r, long i);
mpz_class trex1_bound(const SheafNumerics& s, long r);
mpz_class additive_example_bound(long d, long r);
mpz_class kummer_example_bound(long a, long r);
mpq_class swan_example_bound(long d, long r);

mpz_class formula_A(const MonodromyProfile& prof, long r);
mpz_class formula_B(const MonodromyProfile& prof, long i);
mpz_class formula_M(const MonodromyProfile& prof, long r, long i);
mpq_class C_bound_mult(const MonodromyProfile& prof, long r);

mpq_class normexa1_bound(long d, long r);
mpq_class normexa2_bound(long a, long r, bool same_char);

MonodromyProfile pushforward_kernel_profile(long d);
MonodromyProfile kummer_profile(long a, bool same_char);

// Critical values of g (coefficients in F), all of which must lie in F.
std::vector<Elt> critical_values(const FieldCtx& F, const KPoly& g);
// Smallest F_{p^{m0 k}} holding every critical point of a base polynomial.
int critical_splitting_degree(u64 p, int m0, const BasePoly& g, int max_k = 12);

struct AdmissibleSet {
  const FieldCtx* field = nullptr;
  std::set<u64> excluded;  // encodings of the r-fold sum/product set
  bool admissible(const Elt& t) const { return !excluded.count(field->encode(t)); }
};

AdmissibleSet admissible_set(const FieldCtx& F, const std::vector<Elt>& S, int r, GroupKind kind);

}  // namespace norml

#endif  // NORML_BOUNDS_BOUNDS_HPP_
