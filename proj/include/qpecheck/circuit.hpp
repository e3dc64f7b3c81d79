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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qpecheck {

enum class QubitRole { Precision, Phase };

/// 1-based reference to a precision qubit (P1..Pn) or phase qubit (H1..Hp).
struct QubitRef {
  QubitRole role;
  int index;

  bool operator==(const QubitRef&) const = default;
  std::string to_string() const;
};

inline QubitRef precision(int i) { return {QubitRole::Precision, i}; }
inline QubitRef phase(int l) { return {QubitRole::Phase, l}; }

struct HGate {
  QubitRef target;
  bool operator==(const HGate&) const = default;
};

/// Inverse controlled rotation by 2*pi/2^k. Control and target are both
/// precision qubits; k >= 2 (k = 1 would be the half turn H already covers).
struct CRkDagGate {
  int k;
  QubitRef control;
  QubitRef target;
  bool operator==(const CRkDagGate&) const = default;
};

/// One application of the controlled unitary U. target_map[l-1] is the phase
/// qubit that receives U's rotation symbol r_l; the identity map in any
/// unmutated circuit. C-U^(2^k) is 2^k consecutive CUGate instances.
struct CUGate {
  QubitRef control;
  std::vector<int> target_map;  // size p, entries are 1-based phase indices
  bool operator==(const CUGate&) const = default;
};

struct MeasureGate {
  QubitRef target;
  bool operator==(const MeasureGate&) const = default;
};

using GateOp = std::variant<HGate, CRkDagGate, CUGate, MeasureGate>;

/// Ordered gate list over n precision and p phase qubits. Immutable by
/// convention: all transformations return new circuits.
struct Circuit {
  int n = 0;      // precision qubit count, >= 1
  int p = 0;      // phase qubit count, >= 0
  int max_h = 2;  // maximum H applications per qubit the abstraction budgets for
  std::vector<GateOp> ops;

  bool operator==(const Circuit&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Identity target map {l -> H_l} for p phase qubits.
std::vector<int> identity_map(int p);

bool is_identity_map(const std::vector<int>& map);

/// Throws std::invalid_argument if any qubit index is out of range, k < 2,
/// a rotation has control == target, or a CU map is not total on 1..p.
void validate_circuit(const Circuit& c);

/// Canonical single-line form of one op ("h P1", "crkdag k=2 c=P3 t=P2", ...).
/// p is needed to suppress identity CU maps.
std::string op_to_string(const GateOp& op, int p);

/// Canonical text form. parse_circuit(serialize_circuit(c)) == c.
std::string serialize_circuit(const Circuit& c);

/// Parses the line-based circuit format. Throws ParseError with the
/// offending line number.
Circuit parse_circuit(const std::string& text);

/// Canonical QPE circuit: H layer, 2^(j-1) CU instances per control P_j,
/// iQFT over the precision qubits, measurement layer. Rejects n > 30.
Circuit generate_qpe(int n, int p);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string circuit_digest(const Circuit& c);

}  // namespace qpecheck
