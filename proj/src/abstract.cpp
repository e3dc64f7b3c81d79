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

#include "qpecheck/abstract.hpp"

#include <algorithm>

#include <json.hpp>

namespace qpecheck {

std::string SymbolicRotation::to_string() const {
  if (coeffs.empty()) return "0";
  std::string out;
  for (const auto& [symbol, count] : coeffs) {
    if (!out.empty()) out += "+";
    if (count != 1) out += std::to_string(count);
    out += "r" + std::to_string(symbol);
  }
  return out;
}

BasisAssignment BasisAssignment::zeros(int n) {
  return {std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0)};
}

BasisAssignment BasisAssignment::ones(int n) {
  return {std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1)};
}

BasisAssignment BasisAssignment::unit(int n, int j) {
  BasisAssignment a = zeros(n);
  a.bits[static_cast<std::size_t>(j - 1)] = 1;
  return a;
}

BasisAssignment BasisAssignment::from_index(std::uint64_t index, int n) {
  BasisAssignment a = zeros(n);
  for (int j = 1; j <= n; ++j) {
    a.bits[static_cast<std::size_t>(j - 1)] =
        static_cast<std::uint8_t>((index >> (n - j)) & 1);
  }
  return a;
}

std::string BasisAssignment::to_string() const {
  std::string s;
  for (std::uint8_t b : bits) s += static_cast<char>('0' + b);
  return s;
}

namespace {

std::uint32_t mask(int n) {
  return n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
}

}  // namespace

std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, int n) {
  return (a + b) & mask(n);
}

std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, int n) {
  return (a - b) & mask(n);
}

std::uint8_t msb_bit(std::uint32_t r, int n) {
  return static_cast<std::uint8_t>((r >> (n - 1)) & 1u);
}

int superposition_width(int max_h) {
  int w = 1;
  while ((1 << w) < max_h + 2) ++w;
  return w < 3 ? 3 : w;
}

std::string format_bits(std::uint32_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> i) & 1u) s[static_cast<std::size_t>(width - 1 - i)] = '1';
  }
  return s;
}

std::string format_bv(std::uint32_t value, int width) {
  return std::to_string(width) + "b" + format_bits(value, width);
}

AbstractQubitState apply_h(const AbstractQubitState& st, int max_h, int n) {
  AbstractQubitState out = st;
  const bool was_even = (st.s % 2) == 0;
  out.s = st.s == static_cast<std::uint32_t>(max_h) + 2
              ? static_cast<std::uint32_t>(max_h) + 1
              : st.s + 1;
  if (st.role == QubitRole::Phase) return out;
  const std::uint32_t half_turn = 1u << (n - 1);
  if (was_even) {
    if (st.q == 1) out.r = mod_add(st.r, half_turn, n);
  } else {
    out.q = msb_bit(st.r, n);
    if (st.q == 1) out.r = mod_sub(st.r, half_turn, n);
  }
  return out;
}

AbstractQubitState apply_crk_dag(const AbstractQubitState& ctrl,
                                 const AbstractQubitState& tgt, int k, int n) {
  if (k < 2) throw std::invalid_argument("crkdag: k must be >= 2");
  AbstractQubitState out = tgt;
  if (ctrl.q == 1 && ctrl.s == 2 && tgt.s == 1) {
    const std::uint32_t delta = k <= n ? (1u << (n - k)) : 0u;
    out.r = mod_sub(tgt.r, delta, n);
  }
  return out;
}

std::vector<AbstractQubitState> apply_cu(std::uint8_t ctrl_q,
                                         std::vector<AbstractQubitState> phase_states,
                                         const std::vector<int>& target_map) {
  for (int tgt : target_map) {
    if (tgt < 1 || tgt > static_cast<int>(phase_states.size()) ||
        phase_states[static_cast<std::size_t>(tgt - 1)].role != QubitRole::Phase) {
      throw std::invalid_argument("cu: target map references a non-phase qubit");
    }
  }
  if (ctrl_q == 1) {
    for (std::size_t l = 0; l < target_map.size(); ++l) {
      phase_states[static_cast<std::size_t>(target_map[l] - 1)].sym.add(
          static_cast<int>(l) + 1);
    }
  }
  return phase_states;
}

AbstractQubitState apply_measure(const AbstractQubitState& st) {
  AbstractQubitState out = st;
  switch (st.m) {
    case 0: out.m = 1; break;
    case 1: out.m = 2; break;
    case 2: out.m = 3; break;
    default: out.m = 2; break;
  }
  return out;
}

std::size_t global_index(const Circuit& c, QubitRef q) {
  return q.role == QubitRole::Precision
             ? static_cast<std::size_t>(q.index - 1)
             : static_cast<std::size_t>(c.n + q.index - 1);
}

namespace {

std::uint32_t iqft_sym_rotation(const BasisAssignment& a, int j, int n) {
  std::uint32_t r = 0;
  for (int t = j; t <= n; ++t) {
    if (a.bit(t)) r |= 1u << (n - 1 - (t - j));
  }
  return r;
}

}  // namespace

std::vector<AbstractQubitState> initial_states(const Circuit& c,
                                               const BasisAssignment& a,
                                               InputTemplate tmpl) {
  if (static_cast<int>(a.bits.size()) != c.n) {
    throw std::invalid_argument("assignment length must equal n");
  }
  std::vector<AbstractQubitState> states(static_cast<std::size_t>(c.n + c.p));
  for (int j = 1; j <= c.n; ++j) {
    AbstractQubitState& st = states[static_cast<std::size_t>(j - 1)];
    st.role = QubitRole::Precision;
    st.q = a.bit(j);
    if (tmpl == InputTemplate::IqftSym) {
      st.s = 1;
      st.r = iqft_sym_rotation(a, j, c.n);
    }
  }
  for (int l = 1; l <= c.p; ++l) {
    states[static_cast<std::size_t>(c.n + l - 1)].role = QubitRole::Phase;
  }
  return states;
}

Trace interpret(const Circuit& c, const BasisAssignment& a, InputTemplate tmpl) {
  Trace trace;
  trace.input = initial_states(c, a, tmpl);
  std::vector<AbstractQubitState> st = trace.input;
  trace.steps.reserve(c.ops.size());
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const GateOp& op = c.ops[i];
    if (const auto* h = std::get_if<HGate>(&op)) {
      std::size_t g = global_index(c, h->target);
      st[g] = apply_h(st[g], c.max_h, c.n);
    } else if (const auto* rk = std::get_if<CRkDagGate>(&op)) {
      std::size_t gc = global_index(c, rk->control);
      std::size_t gt = global_index(c, rk->target);
      st[gt] = apply_crk_dag(st[gc], st[gt], rk->k, c.n);
    } else if (const auto* cu = std::get_if<CUGate>(&op)) {
      std::size_t gc = global_index(c, cu->control);
      std::vector<AbstractQubitState> ph(st.begin() + c.n, st.end());
      ph = apply_cu(st[gc].q, std::move(ph), cu->target_map);
      std::copy(ph.begin(), ph.end(), st.begin() + c.n);
    } else if (const auto* ms = std::get_if<MeasureGate>(&op)) {
      std::size_t g = global_index(c, ms->target);
      st[g] = apply_measure(st[g]);
    }
    trace.steps.push_back({i, st});
  }
  return trace;
}

std::string trace_to_json(const Circuit& c, const Trace& trace) {
  using nlohmann::json;
  const int ws = superposition_width(c.max_h);
  json rows = json::array();
  auto emit = [&](const json& op, const std::vector<AbstractQubitState>& states) {
    for (std::size_t g = 0; g < states.size(); ++g) {
      const AbstractQubitState& st = states[g];
      QubitRef ref = g < static_cast<std::size_t>(c.n)
                         ? precision(static_cast<int>(g) + 1)
                         : phase(static_cast<int>(g) - c.n + 1);
      rows.push_back({{"op", op},
                      {"qubit", ref.to_string()},
                      {"q", st.q},
                      {"s", format_bv(st.s, ws)},
                      {"r", st.role == QubitRole::Precision
                                ? format_bits(st.r, c.n)
                                : st.sym.to_string()},
                      {"m", format_bv(st.m, 2)}});
    }
  };
  emit("input", trace.input);
  for (const TraceStep& step : trace.steps) emit(step.op_index, step.states);
  return rows.dump(2) + "\n";
}

}  // namespace qpecheck
