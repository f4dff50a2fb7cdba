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

#ifndef NORML_CHARS_CHARACTERS_HPP_
#define NORML_CHARS_CHARACTERS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "norml/cyclo/cyc_number.hpp"
#include "norml/gf/field.hpp"
#include "norml/gf/tower.hpp"

namespace norml {

// x -> zeta_p^{Tr(a x)} on F_{p^m0}; a is a standalone encoding.
struct AdditiveCharacter {
  u64 p = 0;
  int m0 = 1;
  u64 a = 0;
  bool trivial() const { return a == 0; }
  std::string to_string() const;
};

// g0^j -> zeta_{Q0-1}^{e j} on F_{Q0}, Q0 = p^d0, g0 the standalone generator.
struct MultiplicativeCharacter {
  u64 p = 0;
  int d0 = 1;
  u64 e = 0;
  u64 field_order() const;
  u64 order() const;
  // Smallest d with order | q^d - 1.
  u64 min_degree_over(u64 q) const;
  MultiplicativeCharacter power(u64 k) const;
  bool trivial() const { return order() == 1; }
  std::string to_string() const;
};

// "psi:a=<enc>" (base field supplied by the caller) and "chi:e=<int>@<p>^<d0>".
AdditiveCharacter parse_additive(const std::string& text, u64 p, int m0);
MultiplicativeCharacter parse_multiplicative(const std::string& text);

u64 char_order(const MultiplicativeCharacter& chi);

// Discrete logarithm in a standalone field w.r.t. its generator; tables for
// small fields, baby-step giant-step otherwise.
u64 standalone_log(const FieldCtx& K, const Elt& x);

// Characters bound to a tower; evaluation returns exponents of a root of unity.
class BoundAdditive {
 public:
  BoundAdditive(const Tower& T, const AdditiveCharacter& psi);
  // x in the degree m*m0 subfield; value zeta_p^{result}.
  std::uint32_t exponent(int m, const Elt& x) const;
  u64 conductor() const { return p_; }

 private:
  const Tower* T_;
  int m0_;
  u64 p_;
  Elt a_;
};

class BoundMultiplicative {
 public:
  BoundMultiplicative(const Tower& T, const MultiplicativeCharacter& chi);
  // x nonzero in the degree m*d0 subfield; value zeta_order^{result}.
  u64 exponent(int m, const Elt& x) const;
  // Same for an element already in the degree-d0 subfield.
  u64 exponent_base(const Elt& y) const;
  u64 conductor() const { return order_; }

 private:
  const Tower* T_;
  MultiplicativeCharacter chi_;
  FieldPtr K_;
  u64 order_;
  u64 scale_;
};

CycNumber eval_additive(const Tower& T, const AdditiveCharacter& psi, int m, const Elt& x);
CycNumber eval_multiplicative(const Tower& T, const MultiplicativeCharacter& chi, int m,
                              const Elt& x);

}  // namespace norml

#endif  // NORML_CHARS_CHARACTERS_HPP_
