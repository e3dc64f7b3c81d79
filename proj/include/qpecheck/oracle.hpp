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

#include <cstdint>
#include <string>
#include <vector>

#include "qpecheck/circuit.hpp"

namespace qpecheck {

/// Fraction of a full turn, kept rational so swept phases are exact.
struct Turn {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Product of single-qubit phase gates: qubit H_l picks up e^(2*pi*i*phi_l)
/// on |1>. The concrete instantiation of the abstract rotation symbols r_l.
struct DiagonalUnitary {
  std::vector<Turn> phis;  // size p
};

/// Probabilities over n-bit outcomes, indexed with P1 as the most
/// significant bit.
using Distribution = std::vector<double>;

double total_variation(const Distribution& a, const Distribution& b);

/// Dense statevector run of the circuit on |precision_input> (x) |eigenstate>
/// (bit-strings, '0'/'1', MSB first). Mid-circuit measurements split the
/// state into projected branches, so the returned precision-register
/// distribution is exact with no sampling. Requires n + p <= 12.
Distribution simulate(const Circuit& c, const DiagonalUnitary& u,
                      const std::string& eigenstate,
                      const std::string& precision_input);

struct SweepEntry {
  int t;
  int outcome;
  double prob;
};

struct MutantDivergence {
  std::string mutation;
  double max_tv;
};

struct CrossValidationReport {
  int n = 0;
  int p = 0;
  bool all_exact = false;
  std::vector<SweepEntry> sweeps;
  std::vector<MutantDivergence> mutant_divergences;
};

/// Sweeps phi_1 = t/2^n over all t with eigenstate |10...0> and checks the
/// generated circuit recovers t deterministically; then simulates one mutant
/// per gate family and records its worst-case distance from the correct
/// distribution.
CrossValidationReport cross_validate(int n, int p);

std::string to_json(const CrossValidationReport& report);

}  // namespace qpecheck
