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

#ifndef NORML_LFUN_LFUN_HPP_
#define NORML_LFUN_LFUN_HPP_

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "norml/lfun/cyc_poly.hpp"
#include "norml/sums/norm_sums.hpp"

namespace norml {

struct Recurrence {
  CPoly connection;  // 1 + c_1 T + ... + c_L T^L
  int order = 0;
  int terms = 0;

  bool certified() const { return 2 * order <= terms - 2; }
  // Monic x^L C(1/x).
  CPoly characteristic() const;
};

Recurrence minimal_recurrence(const std::vector<CycNumber>& seq);
Recurrence minimal_recurrence(const CoefficientSequence& seq);
std::vector<CycNumber> extend(const Recurrence& rec, const std::vector<CycNumber>& seq, int S);

struct Eigenvalue {
  std::complex<long double> approx;
  std::optional<CycNumber> exact;
};

// Monic block whose roots share one multiplicity; positive for poles.
struct ModelBlock {
  CPoly poly;
  int multiplicity = 0;
  std::vector<Eigenvalue> eigenvalues;
};

struct RationalModel {
  std::vector<ModelBlock> blocks;
  u64 scale = 1;  // q^m
  int total_degree() const;
  int pole_count() const;
  int root_count() const;
};

RationalModel fit_rational_model(const std::vector<CycNumber>& seq, u64 scale);
RationalModel fit_rational_model(const CoefficientSequence& seq);
std::vector<CycNumber> series_expand(const RationalModel& model, int S);

struct WeightEntry {
  std::complex<long double> value;
  int multiplicity = 0;
  double modulus = 0;
  double weight = 0;
  int nearest = 0;
  double deviation = 0;
};

struct WeightReport {
  std::vector<WeightEntry> entries;
  bool integral_weights_ok = true;
  int total_degree = 0;
  double max_weight = 0;
  double tolerance = 1e-6;
};

WeightReport classify_weights(const RationalModel& model, u64 q_m, double tolerance = 1e-6);

// Fit to r * c_s, the power sums of L^r.
RationalModel rth_power_check(const std::vector<CycNumber>& seq, int r, u64 scale);
RationalModel rth_power_check(const CoefficientSequence& seq, int r);

struct HeldOut {
  Recurrence recurrence;
  std::vector<CycNumber> predicted;
  std::vector<CycNumber> actual;
  bool certified = false;
  bool ok = false;
};

// Recurrence from the first S - holdout terms, checked on the rest.
HeldOut held_out_prediction(const std::vector<CycNumber>& seq, int holdout = 2);

std::string model_to_string(const RationalModel& model);

}  // namespace norml

#endif  // NORML_LFUN_LFUN_HPP_
