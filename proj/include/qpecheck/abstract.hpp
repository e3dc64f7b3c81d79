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
#include <map>
#include <string>
#include <vector>

#include "qpecheck/circuit.hpp"

namespace qpecheck {

// Bit-vector abstraction of a qubit: a 4-tuple <q, s, r, m>.
//   q  basis bit, meaningful whenever the qubit is not in superposition
//   s  superposition counter (number of H applications, odd = superposed)
//   r  rotation state: an n-bit modular register for precision qubits, a
//      formal sum of unitary rotation symbols r_1..r_p for phase qubits
//   m  2-bit measurement counter (00 never, 01 once, 10/11 error states)

/// Formal sum of rotation symbols r_l with nonnegative integer coefficients.
/// The empty map is the zero rotation; coefficients only grow under CU.
struct SymbolicRotation {
  std::map<int, std::uint64_t> coeffs;

  void add(int symbol, std::uint64_t count = 1) { coeffs[symbol] += count; }
  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const SymbolicRotation&) const = default;

  /// "0", "r1", "2r1+r3", ...
  std::string to_string() const;
};

struct AbstractQubitState {
  QubitRole role = QubitRole::Precision;
  std::uint8_t q = 0;
  std::uint32_t s = 0;
  std::uint32_t r = 0;    // precision qubits only, reduced mod 2^n
  SymbolicRotation sym;   // phase qubits only
  std::uint8_t m = 0;

  bool operator==(const AbstractQubitState&) const = default;
};

/// Values b_1..b_n for the symbolic precision basis bits.
struct BasisAssignment {
  std::vector<std::uint8_t> bits;  // bits[j-1] = b_j

  static BasisAssignment zeros(int n);
  static BasisAssignment ones(int n);
  static BasisAssignment unit(int n, int j);  // e_j: b_j = 1, others 0
  // b_1 is the most significant bit of `index`.
  static BasisAssignment from_index(std::uint64_t index, int n);

  std::uint8_t bit(int j) const { return bits[static_cast<std::size_t>(j - 1)]; }
  std::string to_string() const;  // "b_1 b_2 ... b_n" as e.g. "101"
  bool operator==(const BasisAssignment&) const = default;
};

enum class InputTemplate {
  // All qubits start unrotated and unmeasured; precision qubit j carries
  // basis bit b_j, phase qubits carry 0.
  Fresh,
  // iQFT sub-block inputs: precision qubit j superposed once (s = 001) with
  // r_j = b_j b_{j+1} ... b_n 0...0 and q_j = b_j (the MSB of r_j).
  IqftSym,
};

struct TraceStep {
  std::size_t op_index;
  std::vector<AbstractQubitState> states;

  bool operator==(const TraceStep&) const = default;
};

/// Per-step evolution of the whole abstract state vector; states are indexed
/// P1..Pn then H1..Hp.
struct Trace {
  std::vector<AbstractQubitState> input;
  std::vector<TraceStep> steps;

  const std::vector<AbstractQubitState>& at(std::size_t step) const {
    return steps[step].states;
  }
  const std::vector<AbstractQubitState>& output() const {
    return steps.empty() ? input : steps.back().states;
  }
  bool operator==(const Trace&) const = default;
};

std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, int n);
std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, int n);
std::uint8_t msb_bit(std::uint32_t r, int n);

/// Width of the superposition counter; the property literals need at
/// least three bits.
int superposition_width(int max_h);

/// "3b001"-style rendering used in counterexamples and trace dumps.
std::string format_bv(std::uint32_t value, int width);
/// Zero-padded binary without the width prefix ("010").
std::string format_bits(std::uint32_t value, int width);

/// Hadamard transfer function. Bumps s (clamped at max_h+2 back to max_h+1);
/// on superposition entry with q=1 adds the half turn 2^(n-1) to r, on exit
/// assigns q from the MSB of r and subtracts the half turn when q was 1.
/// Phase-role states only track the s update; their rotation state is a
/// formal sum the half-turn arithmetic does not apply to.
AbstractQubitState apply_h(const AbstractQubitState& st, int max_h, int n);

/// Inverse controlled-rotation transfer function: subtracts 2^(n-k) from the
/// target rotation register iff the control is a settled 1 (q=1, s=010) and
/// the target is superposed (s=001). For k > n the subtrahend falls off the
/// register and the gate is an abstract no-op. Returns the new target state;
/// the control state never changes.
AbstractQubitState apply_crk_dag(const AbstractQubitState& ctrl,
                                 const AbstractQubitState& tgt, int k, int n);

/// Controlled-unitary transfer function: when the control bit is 1, adds one
/// rotation symbol r_l to phase state target_map[l-1] for every l. q, s, m of
/// all phase qubits are unchanged.
std::vector<AbstractQubitState> apply_cu(std::uint8_t ctrl_q,
                                         std::vector<AbstractQubitState> phase_states,
                                         const std::vector<int>& target_map);

/// Measurement counter update: 00 -> 01 -> 10 -> 11 -> 10.
AbstractQubitState apply_measure(const AbstractQubitState& st);

std::size_t global_index(const Circuit& c, QubitRef q);

std::vector<AbstractQubitState> initial_states(const Circuit& c,
                                               const BasisAssignment& a,
                                               InputTemplate tmpl);

/// Folds the transfer functions over the circuit in program order. Pure and
/// deterministic in (c, a, tmpl).
Trace interpret(const Circuit& c, const BasisAssignment& a, InputTemplate tmpl);

/// Debug dump: flat JSON array of {op, qubit, q, s, r, m} records, one per
/// qubit per step (op "input" for the initial states).
std::string trace_to_json(const Circuit& c, const Trace& trace);

}  // namespace qpecheck
