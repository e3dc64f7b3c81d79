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

#include <json.hpp>

#include "qpecheck/mutation.hpp"
#include "qpecheck/oracle.hpp"

using namespace qpecheck;

namespace {

int argmax(const Distribution& d) {
  int best = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > d[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("qpe(3,1) recovers phi = 3/8 exactly") {
  const Circuit c = generate_qpe(3, 1);
  const Distribution d = simulate(c, {{Turn{3, 8}}}, "1", "000");
  CHECK(argmax(d) == 3);  // outcome 011
  CHECK(d[3] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero phase estimates zero") {
  const Circuit c = generate_qpe(3, 1);
  const Distribution d = simulate(c, {{Turn{0, 1}}}, "1", "000");
  CHECK(d[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("qpe(2,1) recovers phi = 1/4 as 01") {
  const Circuit c = generate_qpe(2, 1);
  const Distribution d = simulate(c, {{Turn{1, 4}}}, "1", "00");
  CHECK(argmax(d) == 1);
  CHECK(d[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eigenstate selects which phases contribute") {
  const Circuit c = generate_qpe(2, 2);
  // phi = (1/4, arbitrary); eigenstate 10 only exposes phi_1.
  const Distribution d = simulate(c, {{Turn{1, 4}, Turn{1, 3}}}, "10", "00");
  CHECK(d[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("simulate validates inputs") {
  const Circuit c = generate_qpe(2, 1);
  CHECK_THROWS_AS(simulate(c, {{Turn{0, 1}}}, "2", "00"), std::invalid_argument);
  CHECK_THROWS_AS(simulate(c, {{Turn{0, 1}}}, "11", "00"), std::invalid_argument);
  CHECK_THROWS_AS(simulate(c, {}, "1", "00"), std::invalid_argument);
  CHECK_THROWS_AS(simulate(generate_qpe(6, 8), {std::vector<Turn>(8)}, "10000000",
                           "000000"),
                  std::invalid_argument);  // n + p > 12
}

TEST_CASE("hadamard pair is the identity on the statevector") {
  Circuit c;
  c.n = 2;
  c.p = 0;
  c.ops = {HGate{precision(1)}, HGate{precision(1)}};
  const Distribution d = simulate(c, {}, "", "10");
  CHECK(d[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("deterministic sweep over every 3-bit phase") {
  const Circuit c = generate_qpe(3, 1);
  for (int t = 0; t < 8; ++t) {
    const Distribution d = simulate(c, {{Turn{t, 8}}}, "1", "000");
    CHECK(argmax(d) == t);
    CHECK(d[static_cast<std::size_t>(t)] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("cross_validate(3,1) is exact and every gate family diverges") {
  const CrossValidationReport report = cross_validate(3, 1);
  CHECK(report.all_exact);
  CHECK(report.sweeps.size() == 8);
  REQUIRE(report.mutant_divergences.size() == 4);
  for (const MutantDivergence& d : report.mutant_divergences) {
    CAPTURE(d.mutation);
    CHECK(d.max_tv > 0.1);
  }
}

TEST_CASE("cross_validate(2,2) is exact") {
  const CrossValidationReport report = cross_validate(2, 2);
  CHECK(report.all_exact);
  for (const SweepEntry& e : report.sweeps) {
    CHECK(e.outcome == e.t);
    CHECK(e.prob == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("cross_validate report serializes") {
  const auto doc = nlohmann::json::parse(to_json(cross_validate(2, 1)));
  CHECK(doc["n"] == 2);
  CHECK(doc["p"] == 1);
  CHECK(doc["all_exact"] == true);
  CHECK(doc["sweeps"].size() == 4);
  CHECK(doc["mutant_divergences"].size() == 4);
}

TEST_CASE("correct circuit has zero distance from itself") {
  const Circuit c = generate_qpe(2, 1);
  const Distribution d = simulate(c, {{Turn{1, 4}}}, "1", "00");
  CHECK(total_variation(d, d) == 0.0);
}

TEST_CASE("an early measurement changes the outcome statistics") {
  const Circuit c = generate_qpe(3, 1);
  MutationSpec spec;
  spec.cls = MutationClass::MEarly;
  spec.site = 3;  // right after the H layer
  spec.qubit = 1;
  const Circuit mut = mutate(c, spec);
  double max_tv = 0;
  for (int t = 0; t < 8; ++t) {
    const Distribution correct = simulate(c, {{Turn{t, 8}}}, "1", "000");
    const Distribution damaged = simulate(mut, {{Turn{t, 8}}}, "1", "000");
    max_tv = std::max(max_tv, total_variation(correct, damaged));
  }
  CHECK(max_tv > 0.1);
}

}  // TEST_SUITE
