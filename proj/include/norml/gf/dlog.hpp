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

#ifndef NORML_GF_DLOG_HPP_
#define NORML_GF_DLOG_HPP_

#include <optional>

#include "norml/gf/field.hpp"

namespace norml {

// Baby-step giant-step: smallest j in [0, group_order) with base^j = target.
std::optional<u64> bsgs_log(const FieldCtx& F, const Elt& base,
                            const Elt& target, u64 group_order);

}  // namespace norml

#endif  // NORML_GF_DLOG_HPP_
