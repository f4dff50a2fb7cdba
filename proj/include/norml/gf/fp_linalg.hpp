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

#ifndef NORML_GF_FP_LINALG_HPP_
#define NORML_GF_FP_LINALG_HPP_

#include <optional>
#include <vector>

#include "norml/gf/numtheory.hpp"

namespace norml {

using FpMatrix = std::vector<std::vector<u64>>;  // row-major

struct FpSolution {
  std::vector<u64> particular;
  std::vector<std::vector<u64>> kernel;
};

// Solves A x = b over F_p. Returns nullopt when inconsistent.
std::optional<FpSolution> fp_solve(const FpMatrix& A, const std::vector<u64>& b,
                                   u64 p);

}  // namespace norml

#endif  // NORML_GF_FP_LINALG_HPP_
