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

#include "norml/gf/fp_linalg.hpp"

namespace norml {

std::optional<FpSolution> fp_solve(const FpMatrix& A, const std::vector<u64>& b,
                                   u64 p) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  FpMatrix m(rows, std::vector<u64>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = A[i][j] % p;
    m[i][cols] = b[i] % p;
  }
  std::vector<int> pivot_col_of_row;
  std::vector<int> is_pivot(cols, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const u64 iv = powmod(m[rank][c], p - 2, p);
    for (auto& v : m[rank]) v = mulmod(v, iv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][c] == 0) continue;
      const u64 f = m[i][c];
      for (std::size_t k = 0; k <= cols; ++k) {
        m[i][k] = (m[i][k] + p - mulmod(f, m[rank][k], p)) % p;
      }
    }
    is_pivot[c] = static_cast<int>(rank);
    pivot_col_of_row.push_back(static_cast<int>(c));
    ++rank;
  }
  for (std::size_t i = rank; i < rows; ++i) {
    if (m[i][cols] != 0) return std::nullopt;
  }
  FpSolution sol;
  sol.particular.assign(cols, 0);
  for (std::size_t r = 0; r < rank; ++r) {
    sol.particular[pivot_col_of_row[r]] = m[r][cols];
  }
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f] >= 0) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < rank; ++r) {
      v[pivot_col_of_row[r]] = (p - m[r][f]) % p;
    }
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace norml
