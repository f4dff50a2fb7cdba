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

#include "norml/chars/characters.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <regex>

#include "norml/error.hpp"
#include "norml/gf/dlog.hpp"

namespace norml {

namespace {

constexpr u64 kTableLimit = u64{1} << 22;

std::mutex g_table_mu;

const std::vector<std::uint32_t>* log_table(const FieldCtx& K) {
  if (K.order() > kTableLimit) return nullptr;
  static std::map<const FieldCtx*, std::unique_ptr<std::vector<std::uint32_t>>> cache;
  std::lock_guard<std::mutex> lock(g_table_mu);
  auto it = cache.find(&K);
  if (it != cache.end()) return it->second.get();
  auto table = std::make_unique<std::vector<std::uint32_t>>(K.order(), 0);
  Elt cur = K.one();
  for (u64 j = 0; j + 1 < K.order(); ++j) {
    (*table)[K.encode(cur)] = static_cast<std::uint32_t>(j);
    cur = K.mul(cur, K.generator());
  }
  return cache.emplace(&K, std::move(table)).first->second.get();
}

}  // namespace

std::string AdditiveCharacter::to_string() const {
  return "psi:a=" + std::to_string(a) + "@" + std::to_string(p) + "^" + std::to_string(m0);
}

u64 MultiplicativeCharacter::field_order() const { return *checked_pow(p, d0); }

u64 MultiplicativeCharacter::order() const {
  const u64 n = field_order() - 1;
  return n / std::gcd(e % n, n);
}

u64 MultiplicativeCharacter::min_degree_over(u64 q) const {
  return multiplicative_order(q % order(), order());
}

MultiplicativeCharacter MultiplicativeCharacter::power(u64 k) const {
  MultiplicativeCharacter r = *this;
  const u64 n = field_order() - 1;
  r.e = static_cast<u64>((static_cast<u128>(e % n) * (k % n)) % n);
  return r;
}

std::string MultiplicativeCharacter::to_string() const {
  return "chi:e=" + std::to_string(e) + "@" + std::to_string(p) + "^" + std::to_string(d0);
}

u64 char_order(const MultiplicativeCharacter& chi) { return chi.order(); }

AdditiveCharacter parse_additive(const std::string& text, u64 p, int m0) {
  static const std::regex re(R"(^\s*(?:psi:)?a=(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw Error(ErrorCode::kParseError, "bad additive character '" + text + "'");
  }
  AdditiveCharacter psi{p, m0, std::stoull(m[1])};
  if (psi.a >= *checked_pow(p, m0)) {
    throw Error(ErrorCode::kFieldMismatch, "character parameter outside base field");
  }
  return psi;
}

MultiplicativeCharacter parse_multiplicative(const std::string& text) {
  static const std::regex re(R"(^\s*(?:chi:)?e=(\d+)@(\d+)(?:\^(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw Error(ErrorCode::kParseError, "bad multiplicative character '" + text + "'");
  }
  MultiplicativeCharacter chi;
  chi.p = std::stoull(m[2]);
  chi.d0 = m[3].matched ? std::stoi(m[3]) : 1;
  if (!is_prime(chi.p)) throw Error(ErrorCode::kNotPrime, std::to_string(chi.p));
  chi.e = std::stoull(m[1]) % (chi.field_order() - 1);
  return chi;
}

u64 standalone_log(const FieldCtx& K, const Elt& x) {
  if (K.is_zero(x)) throw Error(ErrorCode::kZeroArgument, "log of zero");
  if (const auto* table = log_table(K)) return (*table)[K.encode(x)];
  auto j = bsgs_log(K, K.generator(), x, K.order() - 1);
  if (!j) throw Error(ErrorCode::kInvalidArgument, "discrete log failed");
  return *j;
}

BoundAdditive::BoundAdditive(const Tower& T, const AdditiveCharacter& psi)
    : T_(&T), m0_(psi.m0), p_(psi.p) {
  if (psi.p != T.ambient().p() || T.base_degree() % psi.m0 != 0) {
    throw Error(ErrorCode::kFieldMismatch, psi.to_string() + " not compatible with tower");
  }
  a_ = T.up(psi.m0, T.standalone(psi.m0)->decode(psi.a));
}

std::uint32_t BoundAdditive::exponent(int m, const Elt& x) const {
  const FieldCtx& A = T_->ambient();
  return A.abs_trace(A.mul(a_, x), m * m0_);
}

BoundMultiplicative::BoundMultiplicative(const Tower& T, const MultiplicativeCharacter& chi)
    : T_(&T), chi_(chi) {
  if (chi.p != T.ambient().p() || T.base_degree() % chi.d0 != 0) {
    throw Error(ErrorCode::kFieldMismatch, chi.to_string() + " not compatible with tower");
  }
  K_ = T.standalone(chi.d0);
  order_ = chi.order();
  const u64 n = chi.field_order() - 1;
  scale_ = (chi.e % n) / (n / order_);
}

u64 BoundMultiplicative::exponent_base(const Elt& y) const {
  const Elt z = T_->down(chi_.d0, y);
  const u64 j = standalone_log(*K_, z);
  return static_cast<u64>((static_cast<u128>(scale_) * (j % order_)) % order_);
}

u64 BoundMultiplicative::exponent(int m, const Elt& x) const {
  const FieldCtx& A = T_->ambient();
  if (A.is_zero(x)) throw Error(ErrorCode::kZeroArgument, "character at zero");
  return exponent_base(A.norm_to(x, chi_.d0, m * chi_.d0));
}

CycNumber eval_additive(const Tower& T, const AdditiveCharacter& psi, int m, const Elt& x) {
  const FieldCtx& A = T.ambient();
  if (A.n() % (m * psi.m0) != 0 || !A.in_subfield(x, m * psi.m0)) {
    throw Error(ErrorCode::kFieldMismatch, "argument outside the character's field");
  }
  BoundAdditive b(T, psi);
  return CycNumber::zeta(psi.p, b.exponent(m, x));
}

CycNumber eval_multiplicative(const Tower& T, const MultiplicativeCharacter& chi, int m,
                              const Elt& x) {
  const FieldCtx& A = T.ambient();
  if (A.n() % (m * chi.d0) != 0 || !A.in_subfield(x, m * chi.d0)) {
    throw Error(ErrorCode::kFieldMismatch, "argument outside the character's field");
  }
  BoundMultiplicative b(T, chi);
  return CycNumber::zeta(b.conductor(), static_cast<std::int64_t>(b.exponent(m, x)));
}

}  // namespace norml
