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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qpecheck/circuit.hpp"

namespace qpecheck {

/// Single-error fault classes. Each mutant differs from its parent in exactly
/// one gate instance: one removal, one insertion, or one field change.
enum class MutationClass {
  HDrop,
  HDup,
  HPhaseAdd,
  CrkDrop,
  CrkExtra,
  CrkWrongK,
  CrkWrongCtrl,
  CrkWrongTgt,
  MEarly,
  MDrop,
  MPhase,
  CuDrop,
  CuExtra,
  CuWrongCtrl,
  CuWrongTgt,
};

std::string to_string(MutationClass cls);
MutationClass mutation_class_from_string(const std::string& name);
const std::vector<MutationClass>& all_mutation_classes();

struct MutationSpec {
  MutationClass cls;
  // Index of the mutated op, or the insertion position for H_PHASE_ADD,
  // M_EARLY, and M_PHASE. Duplicating classes (H_DUP, CRK_EXTRA, CU_EXTRA)
  // insert the copy right after the op at `site`.
  std::size_t site = 0;
  std::optional<int> new_k;             // CRK_WRONG_K
  std::optional<int> new_control;       // CRK_WRONG_CTRL, CU_WRONG_CTRL
  std::optional<int> new_target;        // CRK_WRONG_TGT (precision index)
  std::optional<int> symbol;            // CU_WRONG_TGT: which r_l to redirect
  std::optional<int> new_phase_target;  // CU_WRONG_TGT
  std::optional<int> qubit;             // H_PHASE_ADD / M_PHASE (phase index), M_EARLY (precision)

  std::string describe() const;
};

/// Applies one mutation. Throws std::invalid_argument when the site is out of
/// range, the class does not apply at the site, or a parameter is invalid.
Circuit mutate(const Circuit& c, const MutationSpec& m);

/// All applicable single-site mutants for the requested classes, in
/// deterministic order, deduplicated by canonical serialization.
std::vector<std::pair<MutationSpec, Circuit>> enumerate_mutants(
    const Circuit& c, const std::set<MutationClass>& classes);

/// Op indices where `cls` applies (mutation sites or canonical insertion
/// positions). Used by the CLI to list sites.
std::vector<std::size_t> applicable_sites(const Circuit& c, MutationClass cls);

}  // namespace qpecheck
