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

#include "norml/sums/norm_sums.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "norml/error.hpp"
#include "norml/gf/fibers.hpp"
#include "norml/trace/evaluator.hpp"

namespace norml {

namespace {

constexpr u64 kOracleBudget = u64{1} << 22;

CycNumber from_sums(u64 M, const std::vector<mpz_class>& acc) {
  std::vector<mpq_class> raw(acc.begin(), acc.end());
  return CycNumber::from_powers(M, raw);
}

template <class Fiber>
CycNumber sum_over(const Fiber& fiber, const LevelEvaluator& ev, const SumOptions& opt) {
  const u64 M = ev.conductor();
  const u64 chunk = std::max<u64>(opt.chunk, 1);
  const u64 nchunks = (fiber.size() + chunk - 1) / chunk;
  std::vector<std::vector<std::int64_t>> partial(nchunks, std::vector<std::int64_t>(M, 0));
  auto work = [&](u64 c) {
    std::int64_t* acc = partial[c].data();
    fiber.for_each(c * chunk, std::min(fiber.size(), (c + 1) * chunk),
                   [&](const Elt& u) { ev.accumulate(u, acc); });
  };
  const unsigned jobs = static_cast<unsigned>(std::min<u64>(std::max(opt.jobs, 1u), nchunks));
  if (jobs <= 1) {
    for (u64 c = 0; c < nchunks; ++c) work(c);
  } else {
    std::atomic<u64> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex mu;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        try {
          for (u64 c; (c = next.fetch_add(1)) < nchunks;) work(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          next = nchunks;
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<mpz_class> total(M);
  for (const auto& part : partial) {
    for (u64 k = 0; k < M; ++k) {
      if (part[k]) total[k] += mpz_class(static_cast<long>(part[k]));
    }
  }
  return from_sums(M, total);
}

}  // namespace

void validate(const SumSpec& spec) {
  if (!spec.expr) throw Error(ErrorCode::kInvalidArgument, "missing expression");
  if (!is_prime(spec.p)) throw Error(ErrorCode::kNotPrime, std::to_string(spec.p) + " is not prime");
  if (spec.m0 < 1 || spec.m < 1 || spec.r < 1) {
    throw Error(ErrorCode::kInvalidArgument, "degrees must be positive");
  }
  if (spec.kind == GroupKind::kMultiplicative && spec.t == 0) {
    throw Error(ErrorCode::kDomainViolation, "t = 0 is not in G_m");
  }
}

u64 sum_q(const SumSpec& spec) {
  auto q = checked_pow(spec.p, spec.m0);
  if (!q) throw Error(ErrorCode::kDegreeTooLarge, "q overflows");
  return *q;
}

Tower sum_tower(const SumSpec& spec, int s) {
  validate(spec);
  const int L0 = std::lcm(expr_parameter_degree(*spec.expr, spec.m0), spec.m0 * spec.m);
  const int n = std::lcm(L0, spec.m0 * spec.m * spec.r * s);
  return Tower(build_field(spec.p, n, 0), build_field(spec.p, L0, 0));
}

Elt embed_argument(const SumSpec& spec, const Tower& T) {
  const int d = spec.m0 * spec.m;
  const FieldPtr K = T.standalone(d);
  if (spec.t >= K->order()) {
    throw Error(ErrorCode::kInvalidArgument, "t is not an element of k_" + std::to_string(spec.m));
  }
  return T.up(d, K->decode(spec.t));
}

CycNumber norm_power_sum(const SumSpec& spec, const Tower& T, int s, const SumOptions& opt) {
  validate(spec);
  const int level = spec.m * s;
  const int d = spec.m0 * level;
  const int D = d * spec.r;
  if (T.ambient().n() % D != 0) {
    throw Error(ErrorCode::kDegreeTooLarge, "ambient field does not cover k_" + std::to_string(level * spec.r));
  }
  const Elt t = embed_argument(spec, T);
  const LevelEvaluator ev(*spec.expr, T, spec.m0, level * spec.r);
  if (spec.kind == GroupKind::kMultiplicative) {
    return sum_over(NormFiber(T.ambient_ptr(), d, D, t), ev, opt);
  }
  return sum_over(TraceFiber(T.ambient_ptr(), d, D, t), ev, opt);
}

CycNumber norm_power_sum(const SumSpec& spec, const SumOptions& opt) {
  const Tower T = sum_tower(spec, 1);
  return norm_power_sum(spec, T, 1, opt);
}

CoefficientSequence sum_sequence(const SumSpec& spec, int S, const SumOptions& opt) {
  if (S < 1) throw Error(ErrorCode::kInvalidArgument, "sequence length must be positive");
  validate(spec);
  CoefficientSequence seq;
  seq.q = sum_q(spec);
  seq.m = spec.m;
  seq.r = spec.r;
  seq.t = spec.t;
  seq.kind = spec.kind;
  seq.fingerprint = to_sexpr(*spec.expr);
  const u64 M = expr_conductor(*spec.expr, spec.p);
  for (int s = 1; s <= S; ++s) {
    const Tower T = sum_tower(spec, s);
    seq.values.push_back(norm_power_sum(spec, T, s, opt).lifted(M));
  }
  return seq;
}

CycNumber brute_force_oracle(const SumSpec& spec) {
  validate(spec);
  const Tower T = sum_tower(spec, 1);
  const FieldCtx& A = T.ambient();
  const int d = spec.m0 * spec.m;
  const int D = d * spec.r;
  auto size = checked_pow(spec.p, D);
  if (!size || *size > kOracleBudget) {
    throw Error(ErrorCode::kBudgetExceeded, "oracle scan exceeds 2^22 elements");
  }
  const Elt t = embed_argument(spec, T);
  const LevelEvaluator ev(*spec.expr, T, spec.m0, spec.m * spec.r);
  const std::vector<Elt>& basis = A.subfield(D).basis;
  std::vector<std::uint32_t> digit(D, 0);
  Elt u = A.zero();
  CycNumber total;
  for (u64 idx = 0; idx < *size; ++idx) {
    const Elt image = spec.kind == GroupKind::kMultiplicative ? A.norm_to(u, d, D) : A.trace_to(u, d, D);
    if (image == t) total += ev.evaluate(u);
    for (int j = 0; j < D; ++j) {
      A.add_into(u, basis[j]);
      if (++digit[j] < spec.p) break;
      digit[j] = 0;
    }
  }
  return total;
}

}  // namespace norml
