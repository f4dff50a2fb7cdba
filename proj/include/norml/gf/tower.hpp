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

#ifndef NORML_GF_TOWER_HPP_
#define NORML_GF_TOWER_HPP_

#include <map>
#include <vector>

#include "norml/gf/field.hpp"

namespace norml {

// A linear copy of F_{p^d} inside an ambient field, given by the images of
// the standalone power basis.
struct LinearEmbedding {
  int d = 0;
  std::vector<Elt> basis;
  std::vector<int> pivots;
  std::vector<std::uint32_t> restrict_rows;  // d x d
};

LinearEmbedding make_linear_embedding(const FieldCtx& A, std::vector<Elt> basis);

// Ambient field A together with a parameter field B inside it. Every
// standalone F_{p^d} with d | deg B reaches A through B, so all inputs of a
// run share one embedding and results do not depend on the root choices.
class Tower {
 public:
  Tower(FieldPtr ambient, FieldPtr base);

  const FieldCtx& ambient() const { return *A_; }
  const FieldPtr& ambient_ptr() const { return A_; }
  const FieldCtx& base() const { return *B_; }
  int base_degree() const { return B_->n(); }

  // Standalone F_{p^d} for d | deg B.
  FieldPtr standalone(int d) const;
  Elt up(int d, const Elt& x) const;
  bool down(int d, const Elt& y, Elt& out) const;
  Elt down(int d, const Elt& y) const;

 private:
  const LinearEmbedding& emb(int d) const;

  FieldPtr A_;
  FieldPtr B_;
  std::map<int, LinearEmbedding> embs_;
};

}  // namespace norml

#endif  // NORML_GF_TOWER_HPP_
