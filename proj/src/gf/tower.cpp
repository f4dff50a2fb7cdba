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

#include "norml/gf/tower.hpp"

#include "norml/error.hpp"

namespace norml {

LinearEmbedding make_linear_embedding(const FieldCtx& A, std::vector<Elt> basis) {
  const u64 p = A.p();
  const int n = A.n();
  const int d = static_cast<int>(basis.size());
  LinearEmbedding emb;
  emb.d = d;
  emb.basis = std::move(basis);
  // Greedy row selection: keep row r when it raises the rank.
  std::vector<std::vector<u64>> echelon;  // reduced rows with their pivot col
  std::vector<int> echelon_pivot;
  for (int r = 0; r < n && static_cast<int>(emb.pivots.size()) < d; ++r) {
    std::vector<u64> row(d);
    for (int c = 0; c < d; ++c) row[c] = emb.basis[c].c[r];
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      const u64 f = row[echelon_pivot[k]];
      if (!f) continue;
      for (int c = 0; c < d; ++c) row[c] = (row[c] + p - mulmod(f, echelon[k][c], p)) % p;
    }
    int pc = -1;
    for (int c = 0; c < d; ++c) {
      if (row[c]) {
        pc = c;
        break;
      }
    }
    if (pc < 0) continue;
    const u64 iv = powmod(row[pc], p - 2, p);
    for (auto& v : row) v = mulmod(v, iv, p);
    echelon.push_back(row);
    echelon_pivot.push_back(pc);
    emb.pivots.push_back(r);
  }
  if (static_cast<int>(emb.pivots.size()) != d) {
    throw Error(ErrorCode::kInvalidArgument, "embedding basis is dependent");
  }
  std::vector<std::vector<u64>> aug(d, std::vector<u64>(2 * d, 0));
  for (int i = 0; i < d; ++i) {
    for (int c = 0; c < d; ++c) aug[i][c] = emb.basis[c].c[emb.pivots[i]];
    aug[i][d + i] = 1;
  }
  for (int c = 0; c < d; ++c) {
    int piv = c;
    while (aug[piv][c] == 0) ++piv;
    std::swap(aug[piv], aug[c]);
    const u64 iv = powmod(aug[c][c], p - 2, p);
    for (auto& v : aug[c]) v = mulmod(v, iv, p);
    for (int i = 0; i < d; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      const u64 f = aug[i][c];
      for (int k = 0; k < 2 * d; ++k) aug[i][k] = (aug[i][k] + p - mulmod(f, aug[c][k], p)) % p;
    }
  }
  emb.restrict_rows.assign(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      emb.restrict_rows[i * d + k] = static_cast<std::uint32_t>(aug[i][d + k]);
    }
  }
  return emb;
}

Tower::Tower(FieldPtr ambient, FieldPtr base) : A_(std::move(ambient)), B_(std::move(base)) {
  if (A_->p() != B_->p() || A_->n() % B_->n() != 0) {
    throw Error(ErrorCode::kFieldMismatch,
                B_->descriptor() + " does not embed in " + A_->descriptor());
  }
  for (int d : B_->divisor_degrees()) {
    FieldPtr K = standalone(d);
    std::vector<Elt> basis;
    Elt xi = K->one();
    for (int i = 0; i < d; ++i) {
      const Elt in_b = (d == B_->n()) ? xi : B_->embed(d, xi);
      basis.push_back(A_->embed(B_->n(), in_b));
      xi = K->mul(xi, K->x());
    }
    embs_.emplace(d, make_linear_embedding(*A_, std::move(basis)));
  }
}

FieldPtr Tower::standalone(int d) const {
  B_->require_divisor(d);
  if (d == B_->n()) return B_;
  return B_->subfield(d).standalone;
}

const LinearEmbedding& Tower::emb(int d) const {
  auto it = embs_.find(d);
  if (it == embs_.end()) {
    throw Error(ErrorCode::kFieldMismatch,
                "degree " + std::to_string(d) + " not below " + B_->descriptor());
  }
  return it->second;
}

Elt Tower::up(int d, const Elt& x) const {
  const auto& e = emb(d);
  Elt acc;
  for (int i = 0; i < d; ++i) {
    if (x.c[i]) A_->add_into(acc, A_->mul_scalar(e.basis[i], x.c[i]));
  }
  return acc;
}

bool Tower::down(int d, const Elt& y, Elt& out) const {
  const auto& e = emb(d);
  const u64 p = A_->p();
  Elt c;
  for (int i = 0; i < d; ++i) {
    u64 v = 0;
    for (int k = 0; k < d; ++k) {
      v = (v + static_cast<u64>(e.restrict_rows[i * d + k]) * y.c[e.pivots[k]]) % p;
    }
    c.c[i] = static_cast<std::uint32_t>(v);
  }
  if (up(d, c) != y) return false;
  out = c;
  return true;
}

Elt Tower::down(int d, const Elt& y) const {
  Elt out;
  if (!down(d, y, out)) {
    throw Error(ErrorCode::kNotInSubfield,
                "element not in degree-" + std::to_string(d) + " subfield");
  }
  return out;
}

}  // namespace norml
