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

#include "norml/gf/fibers.hpp"

#include <algorithm>

#include "norml/error.hpp"
#include "norml/gf/dlog.hpp"
#include "norml/gf/fp_linalg.hpp"

namespace norml {

namespace {

void check_degrees(const FieldCtx& F, int d, int D) {
  F.require_divisor(D);
  F.require_divisor(d);
  if (D % d != 0) {
    throw Error(ErrorCode::kNotADivisor,
                std::to_string(d) + " does not divide " + std::to_string(D));
  }
}

int top_pivot(const FieldCtx& F, const Elt& v) {
  for (int i = F.n() - 1; i >= 0; --i) {
    if (v.c[i]) return i;
  }
  return -1;
}

}  // namespace

TraceFiber::TraceFiber(FieldPtr Fp, int d, int D, const Elt& t) : F_(std::move(Fp)) {
  const FieldCtx& F = *F_;
  check_degrees(F, d, D);
  if (!F.in_subfield(t, d)) {
    throw Error(ErrorCode::kNotInSubfield,
                "trace target not in degree-" + std::to_string(d) + " subfield");
  }
  const auto& sub = F.subfield(D);
  const u64 p = F.p();
  const int n = F.n();
  FpMatrix A(n, std::vector<u64>(D, 0));
  for (int j = 0; j < D; ++j) {
    const Elt img = F.trace_to(sub.basis[j], d, D);
    for (int i = 0; i < n; ++i) A[i][j] = img.c[i];
  }
  std::vector<u64> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = t.c[i];
  auto sol = fp_solve(A, rhs, p);
  if (!sol) throw Error(ErrorCode::kNotInSubfield, "trace equation inconsistent");
  auto combine = [&](const std::vector<u64>& coef) {
    Elt v;
    for (int j = 0; j < D; ++j) {
      if (coef[j]) F.add_into(v, F.mul_scalar(sub.basis[j], static_cast<std::uint32_t>(coef[j])));
    }
    return v;
  };
  Elt u0 = combine(sol->particular);
  std::vector<Elt> kern;
  for (const auto& k : sol->kernel) kern.push_back(combine(k));

  // Echelon form on top coordinates: each vector owns its highest coordinate.
  std::vector<Elt> reduced;
  for (auto& v : kern) {
    for (;;) {
      const int pv = top_pivot(F, v);
      auto it = std::find_if(reduced.begin(), reduced.end(), [&](const Elt& r) {
        return top_pivot(F, r) == pv;
      });
      if (pv < 0 || it == reduced.end()) break;
      v = F.sub(v, F.mul_scalar(*it, v.c[pv]));
    }
    const int pv = top_pivot(F, v);
    if (pv < 0) continue;
    v = F.mul_scalar(v, static_cast<std::uint32_t>(powmod(v.c[pv], p - 2, p)));
    reduced.push_back(v);
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Elt& a, const Elt& b) {
    return top_pivot(F, a) < top_pivot(F, b);
  });
  // Full back-substitution so each pivot column is a unit column.
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const int pv = top_pivot(F, reduced[i]);
    for (std::size_t j = 0; j < reduced.size(); ++j) {
      if (j == i) continue;
      const std::uint32_t c = reduced[j].c[pv];
      if (c) reduced[j] = F.sub(reduced[j], F.mul_scalar(reduced[i], c));
    }
    const std::uint32_t c = u0.c[pv];
    if (c) u0 = F.sub(u0, F.mul_scalar(reduced[i], c));
  }
  basis_ = std::move(reduced);
  base_ = u0;
  size_ = *checked_pow(p, static_cast<int>(basis_.size()));
  if (static_cast<int>(basis_.size()) != D - d) {
    throw Error(ErrorCode::kInvalidArgument, "trace kernel has unexpected dimension");
  }
}

Elt TraceFiber::at(u64 index) const {
  const FieldCtx& F = *F_;
  Elt v = base_;
  for (const auto& b : basis_) {
    const u64 digit = index % F.p();
    index /= F.p();
    if (digit) F.add_into(v, F.mul_scalar(b, static_cast<std::uint32_t>(digit)));
  }
  return v;
}

std::vector<Elt> TraceFiber::materialize() const {
  std::vector<Elt> out;
  out.reserve(size_);
  for_each(0, size_, [&](const Elt& u) { out.push_back(u); });
  return out;
}

NormFiber::NormFiber(FieldPtr Fp, int d, int D, const Elt& t) : F_(std::move(Fp)) {
  const FieldCtx& F = *F_;
  check_degrees(F, d, D);
  if (F.is_zero(t)) throw Error(ErrorCode::kZeroNorm, "norm fiber over zero");
  if (!F.in_subfield(t, d)) {
    throw Error(ErrorCode::kNotInSubfield,
                "norm target not in degree-" + std::to_string(d) + " subfield");
  }
  const u64 qd = F.subfield_order(d);
  const u64 qD = F.subfield_order(D);
  const Elt gD = F.subfield_generator(D);
  const Elt ng = F.norm_to(gD, d, D);
  auto j = bsgs_log(F, ng, t, qd - 1);
  if (!j) throw Error(ErrorCode::kNotInSubfield, "discrete log failed");
  base_ = F.pow(gD, *j);
  step_ = F.pow(gD, qd - 1);
  size_ = (qD - 1) / (qd - 1);
}

std::vector<Elt> NormFiber::materialize() const {
  const FieldCtx& F = *F_;
  std::vector<std::pair<u64, Elt>> tmp;
  tmp.reserve(size_);
  for_each(0, size_, [&](const Elt& u) { tmp.emplace_back(F.encode(u), u); });
  std::sort(tmp.begin(), tmp.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Elt> out;
  out.reserve(tmp.size());
  for (auto& e : tmp) out.push_back(e.second);
  return out;
}

std::vector<Elt> trace_fiber(FieldPtr F, int d, const Elt& t) {
  const int n = F->n();
  return TraceFiber(std::move(F), d, n, t).materialize();
}

std::vector<Elt> norm_fiber(FieldPtr F, int d, const Elt& t) {
  const int n = F->n();
  return NormFiber(std::move(F), d, n, t).materialize();
}

}  // namespace norml
