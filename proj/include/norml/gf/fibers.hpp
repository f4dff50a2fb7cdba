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

#ifndef NORML_GF_FIBERS_HPP_
#define NORML_GF_FIBERS_HPP_

#include <vector>

#include "norml/gf/field.hpp"

namespace norml {

// {u in F_{p^D} : Tr_{D/d}(u) = t}, an affine F_p-subspace of the ambient
// field, enumerated in ascending encoding order.
class TraceFiber {
 public:
  TraceFiber(FieldPtr F, int d, int D, const Elt& t);

  u64 size() const { return size_; }
  const Elt& base() const { return base_; }
  const std::vector<Elt>& kernel_basis() const { return basis_; }
  const FieldCtx& field() const { return *F_; }

  // Element at position `index` of the canonical order.
  Elt at(u64 index) const;

  template <class Fn>
  void for_each(u64 begin, u64 end, Fn&& fn) const {
    if (begin >= end) return;
    const FieldCtx& F = *F_;
    const u64 p = F.p();
    std::vector<u64> digit(basis_.size() + 1, 0);
    u64 rest = begin;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      digit[j] = rest % p;
      rest /= p;
    }
    Elt cur = at(begin);
    for (u64 idx = begin;;) {
      fn(cur);
      if (++idx == end) break;
      std::size_t j = 0;
      F.add_into(cur, basis_[0]);
      while (++digit[j] == p) {
        digit[j] = 0;
        ++j;
        F.add_into(cur, basis_[j]);
      }
    }
  }

  std::vector<Elt> materialize() const;

 private:
  FieldPtr F_;
  Elt base_;
  std::vector<Elt> basis_;  // ascending pivot position
  u64 size_ = 0;
};

// {u in F_{p^D} : N_{D/d}(u) = t}, t != 0, as the coset u0 * <h>.
class NormFiber {
 public:
  NormFiber(FieldPtr F, int d, int D, const Elt& t);

  u64 size() const { return size_; }
  const Elt& base() const { return base_; }
  const Elt& step() const { return step_; }
  const FieldCtx& field() const { return *F_; }

  // Coset order: base * step^k for k in [begin, end).
  template <class Fn>
  void for_each(u64 begin, u64 end, Fn&& fn) const {
    if (begin >= end) return;
    const FieldCtx& F = *F_;
    Elt cur = F.mul(base_, F.pow(step_, begin));
    for (u64 k = begin;;) {
      fn(cur);
      if (++k == end) break;
      cur = F.mul(cur, step_);
    }
  }

  // Ascending encoding order.
  std::vector<Elt> materialize() const;

 private:
  FieldPtr F_;
  Elt base_;
  Elt step_;
  u64 size_ = 0;
};

std::vector<Elt> trace_fiber(FieldPtr F, int d, const Elt& t);
std::vector<Elt> norm_fiber(FieldPtr F, int d, const Elt& t);

}  // namespace norml

#endif  // NORML_GF_FIBERS_HPP_
