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

#ifndef NORML_GF_FIELD_HPP_
#define NORML_GF_FIELD_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "norml/gf/numtheory.hpp"

namespace norml {

inline constexpr int kMaxDegree = 64;

// Power-basis coordinates; entries at index >= n are zero.
struct Elt {
  std::array<std::uint32_t, kMaxDegree> c{};
  friend bool operator==(const Elt&, const Elt&) = default;
};

// Ceiling on p^n, as a bit count. Defaults to 48.
void set_max_field_bits(int bits);
int max_field_bits();

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

// Cached; identical arguments return the same context.
FieldPtr build_field(u64 p, int n, u64 seed = 0);

struct SubfieldEmbedding {
  int d = 0;
  FieldPtr standalone;  // null when d == n
  Elt beta;             // image of the standalone x
  std::vector<Elt> basis;
  std::vector<int> pivots;
  std::vector<std::uint32_t> restrict_rows;  // d x d over F_p
  std::vector<std::uint32_t> trace_functional;  // Tr to F_p on the subfield
};

class FieldCtx {
 public:
  FieldCtx(u64 p, int n, u64 seed);
  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  u64 p() const { return p_; }
  int n() const { return n_; }
  u64 order() const { return order_; }
  u64 seed() const { return seed_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string descriptor() const;

  Elt zero() const { return Elt{}; }
  Elt one() const;
  Elt scalar(std::int64_t v) const;
  Elt x() const;
  bool is_zero(const Elt& a) const { return a == Elt{}; }

  Elt decode(u64 code) const;
  u64 encode(const Elt& a) const;

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt mul_scalar(const Elt& a, std::uint32_t s) const;
  Elt sqr(const Elt& a) const { return mul(a, a); }
  Elt pow(Elt a, u64 e) const;
  Elt inv(const Elt& a) const;
  Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }
  void add_into(Elt& acc, const Elt& b) const;

  // sigma^j with sigma(u) = u^p.
  Elt frob(const Elt& a, int j) const;

  // Relative maps F_{p^D} -> F_{p^d}; D defaults to n.
  Elt trace_to(const Elt& a, int d, int D = 0) const;
  Elt norm_to(const Elt& a, int d, int D = 0) const;
  bool in_subfield(const Elt& a, int d) const;

  // Tr to F_p of an element of the degree-d subfield.
  std::uint32_t abs_trace(const Elt& a, int d = 0) const;

  const Elt& generator() const { return generator_; }
  // Generator of the multiplicative group of the degree-d subfield.
  Elt subfield_generator(int d) const;
  const std::vector<std::pair<u64, int>>& group_order_factors() const {
    return group_factors_;
  }
  bool is_generator(const Elt& g) const;

  const SubfieldEmbedding& subfield(int d) const;
  const std::vector<int>& divisor_degrees() const { return divisor_degrees_; }
  Elt embed(int d, const Elt& standalone) const;
  Elt restrict_to(int d, const Elt& a) const;
  bool try_restrict(int d, const Elt& a, Elt& out) const;

  u64 subfield_order(int d) const;
  void require_divisor(int d) const;

 private:
  void reduce_wide(const u64* t, Elt& out) const;
  Elt apply_rows(const std::vector<std::uint32_t>& rows, const Elt& a) const;
  void find_modulus();
  void build_tables();
  void find_generator();
  void build_subfields();

  u64 p_;
  int n_;
  u64 seed_;
  u64 order_;
  bool lazy_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> reduction_;  // rows: x^{n+k} mod f
  std::vector<std::vector<std::uint32_t>> frob_rows_;  // sigma^j, row-major
  std::vector<std::uint32_t> abs_trace_;
  std::vector<std::pair<u64, int>> group_factors_;
  Elt generator_;
  std::vector<int> divisor_degrees_;
  std::vector<SubfieldEmbedding> subfields_;
};

}  // namespace norml

#endif  // NORML_GF_FIELD_HPP_
