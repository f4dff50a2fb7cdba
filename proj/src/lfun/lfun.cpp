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

#include "norml/lfun/lfun.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "norml/error.hpp"

namespace norml {

namespace {

u64 coefficient_conductor(const CPoly& a) {
  u64 M = 1;
  for (const auto& c : a) M = std::lcm(M, c.normalized().conductor());
  return M;
}

std::optional<CycNumber> recognize(const CPoly& block, std::complex<long double> z) {
  const long double r = std::abs(z);
  const long double a = std::round(r);
  if (a < 1 || std::abs(r - a) > 1e-9L * std::max<long double>(1, r)) return std::nullopt;
  const u64 N = std::lcm<u64>(2, coefficient_conductor(block));
  const long double turns = std::arg(z) / (2 * std::numbers::pi_v<long double>) * N;
  const long double j = std::round(turns);
  if (std::abs(turns - j) > 1e-9L) return std::nullopt;
  const auto k = static_cast<std::int64_t>((static_cast<std::int64_t>(j) % static_cast<std::int64_t>(N) + N) % N);
  CycNumber cand = CycNumber::zeta(N, k) * CycNumber(static_cast<long>(a));
  if (!cp_eval(block, cand).is_zero()) return std::nullopt;
  return cand.normalized();
}

}  // namespace

CPoly Recurrence::characteristic() const {
  CPoly p(order + 1);
  for (int i = 0; i <= order && i < static_cast<int>(connection.size()); ++i) p[order - i] = connection[i];
  return p;
}

Recurrence minimal_recurrence(const std::vector<CycNumber>& seq) {
  if (seq.size() < 2) throw Error(ErrorCode::kInsufficientTerms, "need at least two terms");
  CPoly C{CycNumber(1L)}, B{CycNumber(1L)};
  int L = 0, m = 1;
  CycNumber b(1L);
  for (std::size_t n = 0; n < seq.size(); ++n) {
    CycNumber d = seq[n];
    for (int i = 1; i <= L && i < static_cast<int>(C.size()); ++i) d += C[i] * seq[n - i];
    if (d.is_zero()) {
      ++m;
      continue;
    }
    const CycNumber coef = d / b;
    CPoly shifted(m, CycNumber());
    for (const auto& c : B) shifted.push_back(c * coef);
    if (2 * L <= static_cast<int>(n)) {
      CPoly T = C;
      C = cp_sub(C, shifted);
      L = static_cast<int>(n) + 1 - L;
      B = std::move(T);
      b = d;
      m = 1;
    } else {
      C = cp_sub(C, shifted);
      ++m;
    }
  }
  Recurrence rec;
  rec.connection = C;
  rec.order = L;
  rec.terms = static_cast<int>(seq.size());
  return rec;
}

Recurrence minimal_recurrence(const CoefficientSequence& seq) { return minimal_recurrence(seq.values); }

std::vector<CycNumber> extend(const Recurrence& rec, const std::vector<CycNumber>& seq, int S) {
  std::vector<CycNumber> out = seq;
  for (int n = static_cast<int>(out.size()); n < S; ++n) {
    CycNumber v;
    for (int i = 1; i <= rec.order && i < static_cast<int>(rec.connection.size()); ++i) {
      if (n - i >= 0) v -= rec.connection[i] * out[n - i];
    }
    out.push_back(v);
  }
  out.resize(S);
  return out;
}

int RationalModel::total_degree() const {
  int d = 0;
  for (const auto& b : blocks) d += std::abs(b.multiplicity) * cp_degree(b.poly);
  return d;
}

int RationalModel::pole_count() const {
  int d = 0;
  for (const auto& b : blocks) d += b.multiplicity > 0 ? b.multiplicity * cp_degree(b.poly) : 0;
  return d;
}

int RationalModel::root_count() const { return total_degree() - pole_count(); }

RationalModel fit_rational_model(const std::vector<CycNumber>& seq, u64 scale) {
  const Recurrence rec = minimal_recurrence(seq);
  RationalModel model;
  model.scale = scale;
  if (rec.order == 0) return model;
  if (!rec.certified()) {
    throw Error(ErrorCode::kInsufficientTerms,
                "no certified recurrence: order " + std::to_string(rec.order) + " from " +
                    std::to_string(seq.size()) + " terms");
  }
  const int L = rec.order;
  if (cp_degree(rec.connection) < L) {
    throw Error(ErrorCode::kNonIntegerMultiplicity, "recurrence has a zero eigenvalue");
  }
  const CPoly P = rec.characteristic();
  CPoly G(L + 1);
  for (int s = 1; s <= L && s <= static_cast<int>(seq.size()); ++s) G[s] = seq[s - 1];
  CPoly A = cp_mul(G, rec.connection);
  if (static_cast<int>(A.size()) > L + 1) A.resize(L + 1);
  const CPoly At = cp_reverse(A, L);
  const CPoly Bt = cp_reverse(cp_derivative(rec.connection), L - 1);
  const CPoly Mx = cp_mod(cp_scale(cp_mul(At, cp_invmod(Bt, P)), CycNumber(-1L)), P);

  const auto roots = cp_complex_roots(P);
  std::map<long, int> candidates;
  for (const auto& z : roots) {
    std::complex<long double> v = 0;
    for (int i = static_cast<int>(Mx.size()) - 1; i >= 0; --i) v = v * z + Mx[i].to_complex_ld();
    const long double k = std::round(v.real());
    if (std::abs(v - std::complex<long double>(k, 0)) > 0.25L || k == 0) {
      throw Error(ErrorCode::kNonIntegerMultiplicity,
                  "multiplicity near " + std::to_string(static_cast<double>(v.real())));
    }
    candidates[static_cast<long>(k)] = 1;
  }
  int covered = 0;
  for (const auto& [k, unused] : candidates) {
    CPoly Pk = cp_gcd(P, cp_sub(Mx, CPoly{CycNumber(k)}));
    if (cp_degree(Pk) < 1) continue;
    ModelBlock block;
    block.poly = Pk;
    block.multiplicity = static_cast<int>(k);
    for (const auto& z : cp_complex_roots(Pk)) block.eigenvalues.push_back({z, recognize(Pk, z)});
    covered += cp_degree(Pk);
    model.blocks.push_back(std::move(block));
  }
  if (covered != L) {
    throw Error(ErrorCode::kNonIntegerMultiplicity, "multiplicities are not integers");
  }
  if (series_expand(model, static_cast<int>(seq.size())) != seq) {
    throw Error(ErrorCode::kNonIntegerMultiplicity, "model does not regenerate the sequence");
  }
  return model;
}

RationalModel fit_rational_model(const CoefficientSequence& seq) {
  return fit_rational_model(seq.values, *checked_pow(seq.q, seq.m));
}

std::vector<CycNumber> series_expand(const RationalModel& model, int S) {
  std::vector<CycNumber> out(S);
  for (const auto& b : model.blocks) {
    const auto ps = cp_power_sums(b.poly, S);
    for (int s = 0; s < S; ++s) out[s] += ps[s] * CycNumber(static_cast<long>(b.multiplicity));
  }
  return out;
}

WeightReport classify_weights(const RationalModel& model, u64 q_m, double tolerance) {
  WeightReport rep;
  rep.tolerance = tolerance;
  rep.total_degree = model.total_degree();
  bool first = true;
  for (const auto& b : model.blocks) {
    for (const auto& ev : b.eigenvalues) {
      WeightEntry e;
      e.value = ev.approx;
      e.multiplicity = b.multiplicity;
      e.modulus = static_cast<double>(std::abs(ev.approx));
      e.weight = static_cast<double>(2 * std::log(std::abs(ev.approx)) / std::log(static_cast<long double>(q_m)));
      e.nearest = static_cast<int>(std::lround(e.weight));
      e.deviation = std::abs(e.weight - e.nearest);
      if (e.deviation > tolerance) rep.integral_weights_ok = false;
      rep.max_weight = first ? e.weight : std::max(rep.max_weight, e.weight);
      first = false;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

RationalModel rth_power_check(const std::vector<CycNumber>& seq, int r, u64 scale) {
  std::vector<CycNumber> scaled;
  for (const auto& c : seq) scaled.push_back(c * CycNumber(static_cast<long>(r)));
  return fit_rational_model(scaled, scale);
}

RationalModel rth_power_check(const CoefficientSequence& seq, int r) {
  return rth_power_check(seq.values, r, *checked_pow(seq.q, seq.m));
}

HeldOut held_out_prediction(const std::vector<CycNumber>& seq, int holdout) {
  HeldOut h;
  const int S = static_cast<int>(seq.size());
  if (S - holdout < 2) throw Error(ErrorCode::kInsufficientTerms, "too few terms to hold any out");
  const std::vector<CycNumber> head(seq.begin(), seq.end() - holdout);
  h.recurrence = minimal_recurrence(head);
  h.certified = 2 * h.recurrence.order <= S - 2;
  const auto full = extend(h.recurrence, head, S);
  h.predicted.assign(full.end() - holdout, full.end());
  h.actual.assign(seq.end() - holdout, seq.end());
  h.ok = h.certified && h.predicted == h.actual;
  return h;
}

std::string model_to_string(const RationalModel& model) {
  std::ostringstream num, den;
  for (const auto& b : model.blocks) {
    std::ostringstream f;
    f << "(";
    for (int i = cp_degree(b.poly); i >= 0; --i) {
      // det(1 - gamma T) form: coefficient of T^{deg - i} is poly[i].
      const int d = cp_degree(b.poly) - i;
      if (b.poly[i].is_zero()) continue;
      if (d != 0) f << " + ";
      f << "(" << b.poly[i].to_string() << ")";
      if (d > 0) f << "*T" << (d > 1 ? "^" + std::to_string(d) : "");
    }
    f << ")";
    if (std::abs(b.multiplicity) > 1) f << "^" << std::abs(b.multiplicity);
    (b.multiplicity > 0 ? den : num) << f.str();
  }
  const std::string n = num.str().empty() ? "1" : num.str();
  const std::string d = den.str().empty() ? "1" : den.str();
  return n + " / " + d;
}

}  // namespace norml
