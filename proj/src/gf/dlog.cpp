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

#include "norml/gf/dlog.hpp"

#include <cmath>
#include <unordered_map>

namespace norml {

std::optional<u64> bsgs_log(const FieldCtx& F, const Elt& base,
                            const Elt& target, u64 group_order) {
  if (F.is_zero(target) || F.is_zero(base)) return std::nullopt;
  u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(group_order))));
  if (m == 0) m = 1;
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  Elt cur = F.one();
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(F.encode(cur), j);
    cur = F.mul(cur, base);
  }
  const Elt giant = F.inv(cur);
  Elt gamma = target;
  for (u64 i = 0; i <= m; ++i) {
    auto it = baby.find(F.encode(gamma));
    if (it != baby.end()) {
      const u64 j = i * m + it->second;
      if (j < group_order) return j;
      return j % group_order;
    }
    gamma = F.mul(gamma, giant);
  }
  return std::nullopt;
}

}  // namespace norml
