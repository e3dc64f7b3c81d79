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

#include "qpecheck/properties.hpp"

namespace qpecheck {

// Exit codes shared by the subcommands:
//   0  success (verify: all four properties PASS)
//   1  verify: at least one property FAIL
//   2  input errors (unparseable circuit, bad flags, refusal to overwrite)
//   3  verify --engine smt with no usable solver
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNoSolver = 3;

struct GenerateArgs {
  int n = 0;
  int p = 0;
  std::string out_path;
  bool force = false;
};

struct VerifyArgs {
  std::string circuit_path;
  std::string engine = "internal";  // internal | smt
  std::string solver_cmd;           // empty: $QPECHECK_SOLVER, then "z3"
  double solver_timeout_s = 300.0;
  std::string report_path;
  std::string p2_block;  // "start:end" manual iQFT block override
  std::string dump_trace_path;
};

struct MutateArgs {
  std::string circuit_path;
  std::string mutation_class;
  std::optional<long> site;
  std::optional<int> new_k;
  std::optional<int> new_control;
  std::optional<int> new_target;
  std::optional<int> symbol;
  std::optional<int> new_phase_target;
  std::optional<int> qubit;
  std::string out_path;
  bool force = false;
};

struct BenchArgs {
  int n = 6;
  std::string phases = "2,4,8,16,32,64";
  std::string engine = "internal";
  std::string solver_cmd;
  std::string report_path;
  std::string error_class = "CU_WRONG_CTRL";
  bool allow_large = false;
  double row_timeout_s = 0.0;
  bool parallel = false;
};

struct ExportSmtArgs {
  std::string circuit_path;
  std::string property = "all";  // p1 | p2 | p3 | p4 | all
  std::string out_path;
};

int cmd_generate(const GenerateArgs& args);
int cmd_verify(const VerifyArgs& args);
int cmd_mutate(const MutateArgs& args);
int cmd_bench(const BenchArgs& args);
int cmd_export_smt(const ExportSmtArgs& args);

}  // namespace qpecheck
