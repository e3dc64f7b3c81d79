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
#include <vector>

#include "qpecheck/mutation.hpp"
#include "qpecheck/properties.hpp"

namespace qpecheck {

struct BenchRow {
  int phase_qubits = 0;
  double correct_time_s = 0.0;
  std::optional<double> correct_mem_mb;
  bool correct_pass = false;
  double error_time_s = 0.0;
  std::optional<double> error_mem_mb;
  std::vector<std::string> error_failing;  // property ids that failed
  bool timed_out = false;
};

struct BenchOptions {
  int n = 6;
  std::vector<int> phases;  // rows, ascending
  Engine engine = Engine::Internal;
  std::string solver_cmd;
  double row_timeout_s = 0.0;  // 0 = no limit
  bool parallel = false;
  MutationClass error_class = MutationClass::CuWrongCtrl;
};

struct BenchReport {
  int n = 0;
  Engine engine = Engine::Internal;
  std::string error_class;
  std::vector<BenchRow> rows;
};

/// One row per phase-qubit count: verifies the correct circuit and one
/// injected-error circuit (default: wrong control on the first CU gate),
/// recording wall time and the process peak RSS after each verification.
BenchReport run_bench(const BenchOptions& opts);

std::string bench_to_json(const BenchReport& report);
std::string bench_to_table(const BenchReport& report);

}  // namespace qpecheck
