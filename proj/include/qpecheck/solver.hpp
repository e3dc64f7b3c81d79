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

#include <map>
#include <string>

namespace qpecheck {

enum class SolverStatus { Unsat, Sat, Unknown, Unavailable };

std::string to_string(SolverStatus s);

struct SolverResult {
  SolverStatus status = SolverStatus::Unknown;
  std::string model_text;  // everything after the "sat" line
  double elapsed_s = 0.0;
  std::string detail;      // diagnostic: exit code, timeout, ...
};

/// Writes the script to a temp .smt2 file and runs `cmd` on it ("{}" in the
/// command template is replaced by the path; otherwise the path is appended).
/// The verdict is the first output line that reads sat/unsat/unknown. A
/// missing binary yields Unavailable, a timeout or unparseable output yields
/// Unknown; this never throws for solver-side failures.
SolverResult run_external_solver(const std::string& cmd, const std::string& script,
                                 double timeout_s = 300.0);

/// Pulls 1-bit assignments out of a (get-model) print: accepts
/// "(define-fun b1 () (_ BitVec 1) #b1)" and "(b1 #b1)" shapes.
std::map<std::string, int> parse_model_bits(const std::string& model_text);

}  // namespace qpecheck
