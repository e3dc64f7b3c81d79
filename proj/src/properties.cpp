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

#include "qpecheck/properties.hpp"

#include <chrono>
#include <random>

#include <sys/resource.h>

#include <json.hpp>

#include "qpecheck/smtlib.hpp"
#include "qpecheck/solver.hpp"

namespace qpecheck {

std::string to_string(PropertyId id) {
  switch (id) {
    case PropertyId::P1Superposition: return "P1_SUPERPOSITION";
    case PropertyId::P2Iqft: return "P2_IQFT";
    case PropertyId::P3Measurement: return "P3_MEASUREMENT";
    case PropertyId::P4Phase: return "P4_PHASE";
  }
  return "?";
}

PropertyId property_from_string(const std::string& name) {
  for (PropertyId id : {PropertyId::P1Superposition, PropertyId::P2Iqft,
                        PropertyId::P3Measurement, PropertyId::P4Phase}) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown property '" + name + "'");
}

std::string StepRef::to_string() const {
  switch (kind) {
    case Kind::Input: return "input";
    case Kind::Output: return "output";
    case Kind::AtOp: return std::to_string(op_index);
  }
  return "?";
}

std::string to_string(Engine e) {
  return e == Engine::Internal ? "INTERNAL" : "SMT";
}

std::size_t measurement_layer_start(const Circuit& c) {
  std::size_t i = c.ops.size();
  while (i > 0 && std::holds_alternative<MeasureGate>(c.ops[i - 1])) --i;
  return i;
}

std::size_t leading_h_prefix(const Circuit& c) {
  std::size_t i = 0;
  while (i < c.ops.size()) {
    const auto* h = std::get_if<HGate>(&c.ops[i]);
    if (h == nullptr || h->target.role != QubitRole::Precision) break;
    ++i;
  }
  return i;
}

OpRange detect_iqft_block(const Circuit& c) {
  const std::size_t end = measurement_layer_start(c);
  std::size_t start = end;
  while (start > 0) {
    const GateOp& op = c.ops[start - 1];
    const auto* h = std::get_if<HGate>(&op);
    const bool in_block =
        (h != nullptr && h->target.role == QubitRole::Precision) ||
        std::holds_alternative<CRkDagGate>(op);
    if (!in_block) break;
    --start;
  }
  return {start, end};
}

namespace {

QubitRef ref_of(const Circuit& c, std::size_t g) {
  return g < static_cast<std::size_t>(c.n)
             ? precision(static_cast<int>(g) + 1)
             : phase(static_cast<int>(g) - c.n + 1);
}

Counterexample make_ce(const BasisAssignment& a, StepRef step, QubitRef qubit,
                       char component, std::string expected, std::string actual) {
  return {a, step, qubit, component, std::move(expected), std::move(actual)};
}

Circuit block_circuit(const Circuit& c, OpRange block) {
  Circuit sub;
  sub.n = c.n;
  sub.p = c.p;
  sub.max_h = c.max_h;
  sub.ops.assign(c.ops.begin() + static_cast<std::ptrdiff_t>(block.first),
                 c.ops.begin() + static_cast<std::ptrdiff_t>(block.second));
  return sub;
}

}  // namespace

void validate_p2_block(const Circuit& c, OpRange block) {
  if (block.first > block.second || block.second > c.ops.size()) {
    throw std::invalid_argument("p2 block range out of bounds");
  }
  for (std::size_t i = block.first; i < block.second; ++i) {
    if (std::holds_alternative<CUGate>(c.ops[i]) ||
        std::holds_alternative<MeasureGate>(c.ops[i])) {
      throw std::invalid_argument("p2 block must contain only h and crkdag ops");
    }
  }
}

std::optional<Counterexample> p1_violation(const Circuit& c, const BasisAssignment& a) {
  const Trace trace = interpret(c, a, InputTemplate::Fresh);
  const int ws = superposition_width(c.max_h);
  const std::size_t prefix = leading_h_prefix(c);
  const StepRef checkpoint =
      prefix == 0 ? StepRef::input() : StepRef::at(prefix - 1);
  const std::vector<AbstractQubitState>& after_layer =
      prefix == 0 ? trace.input : trace.at(prefix - 1);

  for (int j = 0; j < c.n; ++j) {
    const auto& st = after_layer[static_cast<std::size_t>(j)];
    if (st.s != 1) {
      return make_ce(a, checkpoint, precision(j + 1), 's', format_bv(1, ws),
                     format_bv(st.s, ws));
    }
  }
  const auto& out = trace.output();
  for (int j = 0; j < c.n; ++j) {
    const auto& st = out[static_cast<std::size_t>(j)];
    if (st.s != 2) {
      return make_ce(a, StepRef::output(), precision(j + 1), 's',
                     format_bv(2, ws), format_bv(st.s, ws));
    }
  }
  for (int l = 0; l < c.p; ++l) {
    const std::size_t g = static_cast<std::size_t>(c.n + l);
    if (out[g].s != trace.input[g].s) {
      return make_ce(a, StepRef::output(), phase(l + 1), 's',
                     format_bv(trace.input[g].s, ws), format_bv(out[g].s, ws));
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> p2_violation(const Circuit& c, OpRange block,
                                           const BasisAssignment& a) {
  const Circuit sub = block_circuit(c, block);
  const Trace trace = interpret(sub, a, InputTemplate::IqftSym);
  const auto& out = trace.output();
  for (int j = 1; j <= c.n; ++j) {
    const auto& st = out[static_cast<std::size_t>(j - 1)];
    if (st.q != a.bit(j)) {
      return make_ce(a, StepRef::output(), precision(j), 'q',
                     std::to_string(int{a.bit(j)}), std::to_string(int{st.q}));
    }
    if (st.r != 0) {
      return make_ce(a, StepRef::output(), precision(j), 'r',
                     format_bits(0, c.n), format_bits(st.r, c.n));
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> p3_violation(const Circuit& c, const BasisAssignment& a) {
  const Trace trace = interpret(c, a, InputTemplate::Fresh);
  const std::size_t layer = measurement_layer_start(c);
  for (std::size_t step = 0; step < layer; ++step) {
    const auto& states = trace.at(step);
    for (std::size_t g = 0; g < states.size(); ++g) {
      if (states[g].m != 0) {
        return make_ce(a, StepRef::at(step), ref_of(c, g), 'm', format_bv(0, 2),
                       format_bv(states[g].m, 2));
      }
    }
  }
  const auto& out = trace.output();
  for (int j = 0; j < c.n; ++j) {
    const auto& st = out[static_cast<std::size_t>(j)];
    if (st.m != 1) {
      return make_ce(a, StepRef::output(), precision(j + 1), 'm',
                     format_bv(1, 2), format_bv(st.m, 2));
    }
  }
  for (int l = 0; l < c.p; ++l) {
    const auto& st = out[static_cast<std::size_t>(c.n + l)];
    if (st.m != 0) {
      return make_ce(a, StepRef::output(), phase(l + 1), 'm', format_bv(0, 2),
                     format_bv(st.m, 2));
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> p4_violation(const Circuit& c, const BasisAssignment& a) {
  const Trace trace = interpret(c, a, InputTemplate::Fresh);
  std::uint64_t weight = 0;
  for (int j = 1; j <= c.n; ++j) {
    if (a.bit(j)) weight += std::uint64_t{1} << (j - 1);
  }
  const auto& out = trace.output();
  for (int l = 1; l <= c.p; ++l) {
    SymbolicRotation expected;
    if (weight != 0) expected.add(l, weight);
    const auto& st = out[static_cast<std::size_t>(c.n + l - 1)];
    if (!(st.sym == expected)) {
      return make_ce(a, StepRef::output(), phase(l), 'r', expected.to_string(),
                     st.sym.to_string());
    }
  }
  return std::nullopt;
}

namespace {

PropertyResult from_scan(PropertyId id, std::optional<Counterexample> ce) {
  PropertyResult res;
  res.id = id;
  if (ce) {
    res.status = PropStatus::Fail;
    res.counterexample = std::move(ce);
  }
  return res;
}

// s- and m-evolution never read the basis bits, so a single assignment
// decides P1/P3; all-zeros and all-ones both run as a guard.
std::vector<BasisAssignment> structural_assignments(int n) {
  return {BasisAssignment::zeros(n), BasisAssignment::ones(n)};
}

std::vector<BasisAssignment> p4_assignments(int n) {
  std::vector<BasisAssignment> out;
  for (int j = 1; j <= n; ++j) out.push_back(BasisAssignment::unit(n, j));
  std::mt19937 rng(0x51f15eedu);
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
  for (int i = 0; i < 2; ++i) out.push_back(BasisAssignment::from_index(pick(rng), n));
  return out;
}

}  // namespace

PropertyResult check_p1(const Circuit& c) {
  for (const BasisAssignment& a : structural_assignments(c.n)) {
    if (auto ce = p1_violation(c, a)) {
      return from_scan(PropertyId::P1Superposition, std::move(ce));
    }
  }
  return from_scan(PropertyId::P1Superposition, std::nullopt);
}

PropertyResult check_p2(const Circuit& c, std::optional<OpRange> block) {
  const OpRange range = block.value_or(detect_iqft_block(c));
  validate_p2_block(c, range);
  const std::uint64_t count = std::uint64_t{1} << c.n;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    if (auto ce = p2_violation(c, range, BasisAssignment::from_index(idx, c.n))) {
      return from_scan(PropertyId::P2Iqft, std::move(ce));
    }
  }
  return from_scan(PropertyId::P2Iqft, std::nullopt);
}

PropertyResult check_p3(const Circuit& c) {
  for (const BasisAssignment& a : structural_assignments(c.n)) {
    if (auto ce = p3_violation(c, a)) {
      return from_scan(PropertyId::P3Measurement, std::move(ce));
    }
  }
  return from_scan(PropertyId::P3Measurement, std::nullopt);
}

PropertyResult check_p4(const Circuit& c) {
  for (const BasisAssignment& a : p4_assignments(c.n)) {
    if (auto ce = p4_violation(c, a)) {
      return from_scan(PropertyId::P4Phase, std::move(ce));
    }
  }
  return from_scan(PropertyId::P4Phase, std::nullopt);
}

namespace {

PropertyResult run_internal(const Circuit& c, PropertyId id,
                            const VerifyOptions& opts) {
  switch (id) {
    case PropertyId::P1Superposition: return check_p1(c);
    case PropertyId::P2Iqft: return check_p2(c, opts.p2_block);
    case PropertyId::P3Measurement: return check_p3(c);
    case PropertyId::P4Phase: return check_p4(c);
  }
  throw std::logic_error("unreachable");
}

std::optional<Counterexample> replay_violation(const Circuit& c, PropertyId id,
                                               const VerifyOptions& opts,
                                               const BasisAssignment& a) {
  switch (id) {
    case PropertyId::P1Superposition: return p1_violation(c, a);
    case PropertyId::P2Iqft:
      return p2_violation(c, opts.p2_block.value_or(detect_iqft_block(c)), a);
    case PropertyId::P3Measurement: return p3_violation(c, a);
    case PropertyId::P4Phase: return p4_violation(c, a);
  }
  throw std::logic_error("unreachable");
}

constexpr PropertyId kAllProperties[] = {
    PropertyId::P1Superposition, PropertyId::P2Iqft, PropertyId::P3Measurement,
    PropertyId::P4Phase};

}  // namespace

VerificationReport verify_all(const Circuit& c, const VerifyOptions& opts) {
  validate_circuit(c);
  using clock = std::chrono::steady_clock;
  const auto run_start = clock::now();
  auto elapsed_s = [&] {
    return std::chrono::duration<double>(clock::now() - run_start).count();
  };

  VerificationReport report;
  report.circuit_digest = circuit_digest(c);
  report.engine = opts.engine;
  const std::string solver_cmd =
      opts.solver_cmd.empty() ? "z3" : opts.solver_cmd;

  const bool use_smt = opts.engine == Engine::Smt;
  std::size_t slot = 0;
  for (PropertyId id : kAllProperties) {
    PropertyResult res;
    res.id = id;
    const auto prop_start = clock::now();
    if (opts.time_budget_s && elapsed_s() > *opts.time_budget_s) {
      res.status = PropStatus::Skipped;
      res.note = "skipped: time budget exhausted";
      report.properties[slot++] = std::move(res);
      continue;
    }
    if (use_smt) {
      const std::string script = emit_smtlib(c, id, opts.p2_block);
      const SolverResult sr =
          run_external_solver(solver_cmd, script, opts.solver_timeout_s);
      switch (sr.status) {
        case SolverStatus::Unsat:
          res.status = PropStatus::Pass;
          break;
        case SolverStatus::Sat: {
          res.status = PropStatus::Fail;
          const auto bits = parse_model_bits(sr.model_text);
          BasisAssignment a = BasisAssignment::zeros(c.n);
          for (int j = 1; j <= c.n; ++j) {
            auto it = bits.find("b" + std::to_string(j));
            if (it != bits.end()) a.bits[static_cast<std::size_t>(j - 1)] =
                static_cast<std::uint8_t>(it->second);
          }
          res.counterexample = replay_violation(c, id, opts, a);
          if (!res.counterexample) {
            res.note = "solver model did not reproduce internally (assignment " +
                       a.to_string() + ")";
          }
          break;
        }
        case SolverStatus::Unknown: {
          res = run_internal(c, id, opts);
          res.note = "solver returned unknown (" + sr.detail +
                     "); property checked internally";
          break;
        }
        case SolverStatus::Unavailable: {
          report.solver_unavailable = true;
          report.note = "solver command not available: '" + solver_cmd +
                        "'; fell back to the internal engine";
          report.engine = Engine::Internal;
          break;
        }
      }
      if (sr.status == SolverStatus::Unavailable) {
        // Abandon SMT verdicts; the fallback loop below redoes all four.
        break;
      }
    } else {
      res = run_internal(c, id, opts);
    }
    res.time_s = std::chrono::duration<double>(clock::now() - prop_start).count();
    report.properties[slot++] = std::move(res);
  }

  if (report.solver_unavailable) {
    slot = 0;
    for (PropertyId id : kAllProperties) {
      const auto prop_start = clock::now();
      PropertyResult res = run_internal(c, id, opts);
      res.time_s = std::chrono::duration<double>(clock::now() - prop_start).count();
      report.properties[slot++] = std::move(res);
    }
  }

  report.pass = true;
  for (const PropertyResult& res : report.properties) {
    if (res.status != PropStatus::Pass) report.pass = false;
  }
  report.peak_memory_bytes = peak_rss_bytes();
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  using nlohmann::json;
  json props = json::array();
  for (const PropertyResult& res : report.properties) {
    json p = {{"id", to_string(res.id)},
              {"status", res.status == PropStatus::Pass     ? "PASS"
                         : res.status == PropStatus::Fail   ? "FAIL"
                                                            : "SKIPPED"},
              {"time_s", res.time_s}};
    if (res.note) p["note"] = *res.note;
    if (res.counterexample) {
      const Counterexample& ce = *res.counterexample;
      json step;
      if (ce.step.kind == StepRef::Kind::AtOp) {
        step = ce.step.op_index;
      } else {
        step = ce.step.to_string();
      }
      p["counterexample"] = {{"assignment", ce.assignment.to_string()},
                             {"step", step},
                             {"qubit", ce.qubit.to_string()},
                             {"component", std::string(1, ce.component)},
                             {"expected", ce.expected},
                             {"actual", ce.actual}};
    }
    props.push_back(std::move(p));
  }
  json doc = {{"circuit", report.circuit_digest},
              {"engine", to_string(report.engine)},
              {"pass", report.pass},
              {"properties", props}};
  if (report.peak_memory_bytes) doc["peak_memory_bytes"] = *report.peak_memory_bytes;
  if (report.note) doc["note"] = *report.note;
  if (report.solver_unavailable) doc["solver_unavailable"] = true;
  return doc.dump(2) + "\n";
}

std::optional<std::uint64_t> peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return std::nullopt;
  if (usage.ru_maxrss <= 0) return std::nullopt;
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024u;
}

}  // namespace qpecheck
