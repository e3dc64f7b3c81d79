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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "qpecheck/abstract.hpp"
#include "qpecheck/circuit.hpp"

namespace qpecheck {

enum class PropertyId { P1Superposition, P2Iqft, P3Measurement, P4Phase };

std::string to_string(PropertyId id);  // "P1_SUPERPOSITION", ...
PropertyId property_from_string(const std::string& name);

/// Point in a trace a counterexample refers to: the input state, the state
/// after op `op_index`, or the circuit output.
struct StepRef {
  enum class Kind { Input, AtOp, Output } kind = Kind::Output;
  std::size_t op_index = 0;

  static StepRef input() { return {Kind::Input, 0}; }
  static StepRef at(std::size_t i) { return {Kind::AtOp, i}; }
  static StepRef output() { return {Kind::Output, 0}; }
  std::string to_string() const;
  bool operator==(const StepRef&) const = default;
};

struct Counterexample {
  BasisAssignment assignment;
  StepRef step;
  QubitRef qubit;
  char component = 'q';  // one of q, s, r, m
  std::string expected;
  std::string actual;
};

enum class PropStatus { Pass, Fail, Skipped };

struct PropertyResult {
  PropertyId id;
  PropStatus status = PropStatus::Pass;
  std::optional<Counterexample> counterexample;
  double time_s = 0.0;
  std::optional<std::string> note;

  bool pass() const { return status == PropStatus::Pass; }
};

enum class Engine { Internal, Smt };

std::string to_string(Engine e);

struct VerificationReport {
  std::string circuit_digest;
  Engine engine = Engine::Internal;
  bool pass = false;
  std::array<PropertyResult, 4> properties;
  std::optional<std::uint64_t> peak_memory_bytes;
  std::optional<std::string> note;
  bool solver_unavailable = false;
};

using OpRange = std::pair<std::size_t, std::size_t>;  // [start, end)

/// Start of the maximal trailing run of measure ops.
std::size_t measurement_layer_start(const Circuit& c);

/// Length of the leading run of H gates on precision qubits (the initial
/// superposition layer).
std::size_t leading_h_prefix(const Circuit& c);

/// Maximal trailing H/C-Rk segment before the measurement layer: the iQFT
/// sub-block of a generated circuit.
OpRange detect_iqft_block(const Circuit& c);

/// Throws std::invalid_argument unless the range is in bounds and free of CU
/// and measure ops.
void validate_p2_block(const Circuit& c, OpRange block);

// Per-assignment property cores. Counterexamples follow the tie-break order:
// earliest step, then lowest qubit, then component order q, s, r, m.
std::optional<Counterexample> p1_violation(const Circuit& c, const BasisAssignment& a);
std::optional<Counterexample> p2_violation(const Circuit& c, OpRange block,
                                           const BasisAssignment& a);
std::optional<Counterexample> p3_violation(const Circuit& c, const BasisAssignment& a);
std::optional<Counterexample> p4_violation(const Circuit& c, const BasisAssignment& a);

/// Superposition correctness: s = 001 on every precision qubit right after
/// the initial H layer, s = 010 at output, and phase-qubit s unchanged.
PropertyResult check_p1(const Circuit& c);

/// iQFT correctness over all 2^n basis assignments: the block must return
/// every precision rotation to zero and every basis bit to b_j. Throws if
/// the block contains CU or measure ops.
PropertyResult check_p2(const Circuit& c, std::optional<OpRange> block = {});

/// Measurement correctness: no measurement before the final layer, exactly
/// one per precision qubit at output, none on phase qubits.
PropertyResult check_p3(const Circuit& c);

/// Phase accumulation correctness: under every checked assignment the
/// rotation sum on phase qubit H_l is exactly (sum of 2^(j-1) over set bits
/// b_j) times r_l. CU accumulation is linear in the control bits, so the n
/// unit assignments plus two composite spot-checks decide the property.
PropertyResult check_p4(const Circuit& c);

struct VerifyOptions {
  Engine engine = Engine::Internal;
  std::string solver_cmd;           // defaults to "z3" when engine is Smt
  double solver_timeout_s = 300.0;
  std::optional<OpRange> p2_block;  // overrides iQFT block auto-detection
  std::optional<double> time_budget_s;
};

/// Runs all four property checks and aggregates timings. With the SMT engine
/// each property is exported, handed to the external solver, and sat models
/// are replayed internally to recover a full counterexample; if the solver is
/// unavailable the whole run falls back to the internal engine with a note.
VerificationReport verify_all(const Circuit& c, const VerifyOptions& opts = {});

std::string report_to_json(const VerificationReport& report);

std::optional<std::uint64_t> peak_rss_bytes();

}  // namespace qpecheck
