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

#include <doctest.h>

#include <set>

#include "qpecheck/mutation.hpp"

using namespace qpecheck;

namespace {

std::set<MutationClass> only(MutationClass cls) { return {cls}; }

// Mutants must differ from the parent in exactly one gate instance.
bool single_gate_difference(const Circuit& parent, const Circuit& mutant) {
  const auto& a = parent.ops;
  const auto& b = mutant.ops;
  if (a.size() == b.size()) {
    int diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += !(a[i] == b[i]);
    return diff == 1;
  }
  const auto& longer = a.size() > b.size() ? a : b;
  const auto& shorter = a.size() > b.size() ? b : a;
  if (longer.size() != shorter.size() + 1) return false;
  // One op was inserted or removed: the rest must align around it.
  std::size_t i = 0;
  while (i < shorter.size() && shorter[i] == longer[i]) ++i;
  for (std::size_t j = i; j < shorter.size(); ++j) {
    if (!(shorter[j] == longer[j + 1])) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("mutation") {

TEST_CASE("H_DROP removes the first H") {
  const Circuit base = generate_qpe(3, 1);
  MutationSpec spec;
  spec.cls = MutationClass::HDrop;
  spec.site = 0;
  const Circuit mut = mutate(base, spec);
  CHECK(mut.ops.size() == base.ops.size() - 1);
  CHECK(mut.ops[0] == GateOp{HGate{precision(2)}});
}

TEST_CASE("CU_WRONG_CTRL swaps the control qubit") {
  const Circuit base = generate_qpe(3, 1);
  MutationSpec spec;
  spec.cls = MutationClass::CuWrongCtrl;
  spec.site = 3;  // first CU op
  spec.new_control = 2;
  const Circuit mut = mutate(base, spec);
  CHECK(std::get<CUGate>(mut.ops[3]).control == precision(2));
  CHECK(mut.ops.size() == base.ops.size());
}

TEST_CASE("M_PHASE appends a phase-qubit measurement") {
  const Circuit base = generate_qpe(3, 1);
  MutationSpec spec;
  spec.cls = MutationClass::MPhase;
  spec.site = base.ops.size();
  spec.qubit = 1;
  const Circuit mut = mutate(base, spec);
  CHECK(mut.ops.back() == GateOp{MeasureGate{phase(1)}});
}

TEST_CASE("mutate validates sites and classes") {
  const Circuit base = generate_qpe(2, 1);
  MutationSpec spec;
  spec.cls = MutationClass::CrkDrop;
  spec.site = 0;  // an H gate, not a crkdag
  CHECK_THROWS_AS(mutate(base, spec), std::invalid_argument);
  spec.site = base.ops.size() + 5;
  CHECK_THROWS_AS(mutate(base, spec), std::invalid_argument);

  MutationSpec wrongk;
  wrongk.cls = MutationClass::CrkWrongK;
  wrongk.site = 5;  // the single crkdag of qpe(2,1)
  CHECK_THROWS_AS(mutate(base, wrongk), std::invalid_argument);  // missing new_k
  wrongk.new_k = 2;  // equal to the original
  CHECK_THROWS_AS(mutate(base, wrongk), std::invalid_argument);

  MutationSpec early;
  early.cls = MutationClass::MEarly;
  early.qubit = 1;
  early.site = base.ops.size();  // inside the measurement layer
  CHECK_THROWS_AS(mutate(base, early), std::invalid_argument);
}

TEST_CASE("H_DROP on qpe(1,1) yields one mutant per H gate") {
  const auto mutants = enumerate_mutants(generate_qpe(1, 1), only(MutationClass::HDrop));
  CHECK(mutants.size() == 2);
}

TEST_CASE("CRK_WRONG_K enumerates alternatives in 2..n+1") {
  const Circuit base = generate_qpe(3, 1);
  const auto mutants = enumerate_mutants(base, only(MutationClass::CrkWrongK));
  // 3 rotation gates, alternatives {2,3,4} minus the original each.
  CHECK(mutants.size() == 6);
  for (const auto& [spec, mut] : mutants) {
    REQUIRE(spec.new_k.has_value());
    CHECK(*spec.new_k >= 2);
    CHECK(*spec.new_k <= base.n + 1);
  }
}

TEST_CASE("CU_DROP deduplicates inside each power block") {
  // Dropping any of the 2^(j-1) identical consecutive CU gates gives the same
  // circuit, so qpe(3,1) has exactly n distinct CU_DROP mutants.
  const auto mutants = enumerate_mutants(generate_qpe(3, 1), only(MutationClass::CuDrop));
  CHECK(mutants.size() == 3);
}

TEST_CASE("CU_WRONG_TGT needs a second phase qubit") {
  CHECK(enumerate_mutants(generate_qpe(2, 1), only(MutationClass::CuWrongTgt)).empty());
  const auto mutants =
      enumerate_mutants(generate_qpe(2, 2), only(MutationClass::CuWrongTgt));
  CHECK(!mutants.empty());
}

TEST_CASE("every enumerated mutant differs in exactly one gate") {
  for (const Circuit& base : {generate_qpe(3, 1), generate_qpe(2, 2)}) {
    const std::set<MutationClass> classes(all_mutation_classes().begin(),
                                          all_mutation_classes().end());
    const auto mutants = enumerate_mutants(base, classes);
    CHECK(!mutants.empty());
    std::set<std::string> seen;
    for (const auto& [spec, mutant] : mutants) {
      CAPTURE(spec.describe());
      CHECK(single_gate_difference(base, mutant));
      CHECK(serialize_circuit(mutant) != serialize_circuit(base));
      CHECK(seen.insert(serialize_circuit(mutant)).second);
    }
  }
}

}  // TEST_SUITE
