// Copyright 2026 The qpecheck Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>

#include "qpecheck/properties.hpp"

namespace qpecheck {

/// Self-contained QF_BV script: free 1-bit variables b_1..b_n, the circuit's
/// transfer functions unrolled in SSA form, and the negation of the property
/// asserted. (check-sat) is unsat exactly when the property holds; a sat
/// model carries a violating basis assignment. Property 4 accumulates CU
/// rotations in width-(n+1) counters.
std::string emit_smtlib(const Circuit& c, PropertyId id,
                        std::optional<OpRange> p2_block = {});

}  // namespace qpecheck
