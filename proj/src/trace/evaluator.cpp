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

#include "norml/trace/evaluator.hpp"

#include <cstdlib>
#include <numeric>

#include "norml/error.hpp"

namespace norml {

CycNumber raw_to_cyc(u64 M, const RawCyc& raw) { return CycNumber::from_powers(M, raw); }

RawCyc cyc_to_raw(u64 M, const CycNumber& v) {
  auto coeffs = v.power_coefficients(M);
  RawCyc raw(M, 0);
  for (u64 k = 0; k < M; ++k) {
    if (coeffs[k].get_den() != 1) {
      throw Error(ErrorCode::kTwistNotIntegral, "value " + v.to_string() + " not in Z[zeta]");
    }
    raw[k] = coeffs[k].get_num().get_si();
  }
  return raw;
}

KPoly embed_base_poly(const Tower& T, int m0, const BasePoly& g) {
  const FieldCtx& A = T.ambient();
  FieldPtr K = T.standalone(m0);
  KPoly out;
  for (auto c : g) {
    const u64 mag = static_cast<u64>(c < 0 ? -c : c);
    if (mag >= K->order()) {
      throw Error(ErrorCode::kFieldMismatch,
                  "coefficient " + std::to_string(c) + " outside " + K->descriptor());
    }
    Elt v = T.up(m0, K->decode(mag));
    out.push_back(c < 0 ? A.neg(v) : v);
  }
  kp_trim(A, out);
  return out;
}

struct LevelEvaluator::Node {
  ExprKind kind;
  RawCyc alpha_pow;
  std::unique_ptr<BoundAdditive> psi;
  std::unique_ptr<BoundMultiplicative> chi;
  KPoly g;
  Elt point;
  bool active = true;
  u64 chi_step = 0;   // M / order
  u64 field_size = 0;  // q^level
  int target_degree = 0;
  std::vector<u64> frob_exps;
  std::vector<std::unique_ptr<Node>> kids;
};

namespace {

using Node = LevelEvaluator::Node;

std::unique_ptr<Node> compile(const Expr& e, const Tower& T, int m0, int level, u64 M) {
  const FieldCtx& A = T.ambient();
  const u64 p = A.p();
  auto n = std::make_unique<Node>();
  n->kind = e.kind;
  switch (e.kind) {
    case ExprKind::kConstant: break;
    case ExprKind::kTwistDeg:
      n->alpha_pow = cyc_to_raw(M, e.alpha.pow(static_cast<u64>(level)));
      break;
    case ExprKind::kArtinSchreier:
      n->psi = std::make_unique<BoundAdditive>(T, AdditiveCharacter{p, m0, e.psi_a});
      n->g = embed_base_poly(T, m0, e.poly);
      break;
    case ExprKind::kKummer:
      if (e.chi.d0 != m0 || e.chi.p != p) {
        throw Error(ErrorCode::kFieldMismatch, "Kummer character must live on the base field");
      }
      n->chi = std::make_unique<BoundMultiplicative>(T, e.chi);
      n->chi_step = M / e.chi.order();
      n->g = embed_base_poly(T, m0, e.poly);
      break;
    case ExprKind::kPushforwardCount:
    case ExprKind::kPushforwardKernel:
      n->g = embed_base_poly(T, m0, e.poly);
      n->field_size = *checked_pow(p, m0 * level);
      break;
    case ExprKind::kPunctual: {
      if (e.point_p != p) throw Error(ErrorCode::kFieldMismatch, "point over another prime");
      FieldPtr K = T.standalone(e.point_degree);
      if (e.point >= K->order()) throw Error(ErrorCode::kFieldMismatch, "point encoding too large");
      n->point = T.up(e.point_degree, K->decode(e.point));
      n->alpha_pow = cyc_to_raw(M, e.alpha.pow(static_cast<u64>(level)));
      break;
    }
    case ExprKind::kInducedKummer: {
      const int d = e.induced_degree;
      if (e.chi.d0 != m0 * d || e.chi.p != p) {
        throw Error(ErrorCode::kFieldMismatch, "induced character must live on k_d");
      }
      n->active = level % d == 0;
      n->target_degree = m0 * d;
      if (n->active) {
        n->chi = std::make_unique<BoundMultiplicative>(T, e.chi);
        const u64 ord = e.chi.order();
        n->chi_step = M / ord;
        const u64 q = *checked_pow(p, m0);
        u64 qi = 1 % ord;
        for (int i = 0; i < d; ++i) {
          n->frob_exps.push_back(qi);
          qi = static_cast<u64>(static_cast<u128>(qi) * q % ord);
        }
      }
      break;
    }
    case ExprKind::kShift:
    case ExprKind::kSum:
    case ExprKind::kProduct:
      for (const auto& c : e.children) n->kids.push_back(compile(*c, T, m0, level, M));
      break;
  }
  return n;
}

u64 count_preimages(const FieldCtx& A, const Node& n, const Elt& u, int D) {
  const int deg = kp_degree(n.g);
  if (deg <= 0) {
    const Elt c = deg == 0 ? n.g[0] : A.zero();
    return c == u ? n.field_size : 0;
  }
  if (deg == 1) return 1;  // coefficients lie in the base field
  KPoly h = n.g;
  h[0] = A.sub(h[0], u);
  return kp_count_roots(A, h, D);
}

void eval_into(const FieldCtx& A, const Node& n, int D, int level, u64 M, const Elt& u,
               std::int64_t sign, std::int64_t* acc) {
  switch (n.kind) {
    case ExprKind::kConstant: acc[0] += sign; return;
    case ExprKind::kTwistDeg:
      for (u64 k = 0; k < M; ++k) acc[k] += sign * n.alpha_pow[k];
      return;
    case ExprKind::kArtinSchreier: {
      const Elt y = kp_eval(A, n.g, u);
      acc[static_cast<u64>(n.psi->exponent(level, y)) * (M / A.p())] += sign;
      return;
    }
    case ExprKind::kKummer: {
      const Elt y = kp_eval(A, n.g, u);
      if (A.is_zero(y)) return;
      acc[n.chi->exponent(level, y) * n.chi_step] += sign;
      return;
    }
    case ExprKind::kPushforwardCount:
      acc[0] += sign * static_cast<std::int64_t>(count_preimages(A, n, u, D));
      return;
    case ExprKind::kPushforwardKernel:
      acc[0] += sign * (static_cast<std::int64_t>(count_preimages(A, n, u, D)) - 1);
      return;
    case ExprKind::kPunctual:
      if (u == n.point) {
        for (u64 k = 0; k < M; ++k) acc[k] += sign * n.alpha_pow[k];
      }
      return;
    case ExprKind::kInducedKummer: {
      if (!n.active) return;
      const Elt y = A.norm_to(u, n.target_degree, D);
      if (A.is_zero(y)) return;
      const u64 j = n.chi->exponent_base(y);
      const u64 ord = M / n.chi_step;
      for (u64 qi : n.frob_exps) {
        acc[static_cast<u64>(static_cast<u128>(j) * qi % ord) * n.chi_step] += sign;
      }
      return;
    }
    case ExprKind::kShift: eval_into(A, *n.kids[0], D, level, M, u, -sign, acc); return;
    case ExprKind::kSum:
      for (const auto& k : n.kids) eval_into(A, *k, D, level, M, u, sign, acc);
      return;
    case ExprKind::kProduct: {
      RawCyc cur(M, 0), tmp(M, 0), next(M, 0);
      eval_into(A, *n.kids[0], D, level, M, u, 1, cur.data());
      for (std::size_t c = 1; c < n.kids.size(); ++c) {
        std::fill(tmp.begin(), tmp.end(), 0);
        eval_into(A, *n.kids[c], D, level, M, u, 1, tmp.data());
        std::fill(next.begin(), next.end(), 0);
        for (u64 i = 0; i < M; ++i) {
          if (!cur[i]) continue;
          for (u64 j = 0; j < M; ++j) {
            if (tmp[j]) next[(i + j) % M] += cur[i] * tmp[j];
          }
        }
        std::swap(cur, next);
      }
      for (u64 k = 0; k < M; ++k) acc[k] += sign * cur[k];
      return;
    }
  }
}

}  // namespace

LevelEvaluator::LevelEvaluator(const Expr& e, const Tower& T, int m0, int level, u64 conductor)
    : T_(&T), m0_(m0), level_(level) {
  const u64 need = expr_conductor(e, T.ambient().p());
  M_ = conductor ? conductor : need;
  if (M_ % need != 0) {
    throw Error(ErrorCode::kInvalidArgument, "conductor does not cover the expression");
  }
  if (T.ambient().n() % (m0 * level) != 0 || T.base_degree() % m0 != 0) {
    throw Error(ErrorCode::kFieldMismatch, "level field not inside the tower");
  }
  root_ = compile(e, T, m0, level, M_);
}

LevelEvaluator::~LevelEvaluator() = default;

void LevelEvaluator::accumulate(const Elt& u, std::int64_t* acc) const {
  eval_into(T_->ambient(), *root_, m0_ * level_, level_, M_, u, 1, acc);
}

CycNumber LevelEvaluator::evaluate(const Elt& u) const {
  RawCyc acc(M_, 0);
  accumulate(u, acc.data());
  return raw_to_cyc(M_, acc);
}

CycNumber evaluate(const Expr& e, const Tower& T, int m0, int m, const Elt& t, GroupKind kind) {
  const FieldCtx& A = T.ambient();
  if (A.n() % (m0 * m) != 0 || !A.in_subfield(t, m0 * m)) {
    throw Error(ErrorCode::kFieldMismatch, "argument outside k_" + std::to_string(m));
  }
  if (kind == GroupKind::kMultiplicative && A.is_zero(t)) {
    throw Error(ErrorCode::kDomainViolation, "t = 0 on the multiplicative group");
  }
  LevelEvaluator ev(e, T, m0, m);
  return ev.evaluate(t);
}

}  // namespace norml
