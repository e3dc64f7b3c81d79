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

#include "qpecheck/mutation.hpp"

#include <unordered_set>

namespace qpecheck {

namespace {

const std::pair<MutationClass, const char*> kClassNames[] = {
    {MutationClass::HDrop, "H_DROP"},
    {MutationClass::HDup, "H_DUP"},
    {MutationClass::HPhaseAdd, "H_PHASE_ADD"},
    {MutationClass::CrkDrop, "CRK_DROP"},
    {MutationClass::CrkExtra, "CRK_EXTRA"},
    {MutationClass::CrkWrongK, "CRK_WRONG_K"},
    {MutationClass::CrkWrongCtrl, "CRK_WRONG_CTRL"},
    {MutationClass::CrkWrongTgt, "CRK_WRONG_TGT"},
    {MutationClass::MEarly, "M_EARLY"},
    {MutationClass::MDrop, "M_DROP"},
    {MutationClass::MPhase, "M_PHASE"},
    {MutationClass::CuDrop, "CU_DROP"},
    {MutationClass::CuExtra, "CU_EXTRA"},
    {MutationClass::CuWrongCtrl, "CU_WRONG_CTRL"},
    {MutationClass::CuWrongTgt, "CU_WRONG_TGT"},
};

std::size_t trailing_measure_start(const Circuit& c) {
  std::size_t i = c.ops.size();
  while (i > 0 && std::holds_alternative<MeasureGate>(c.ops[i - 1])) --i;
  return i;
}

std::size_t leading_h_run(const Circuit& c) {
  std::size_t i = 0;
  while (i < c.ops.size()) {
    const auto* h = std::get_if<HGate>(&c.ops[i]);
    if (h == nullptr || h->target.role != QubitRole::Precision) break;
    ++i;
  }
  return i;
}

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

const HGate& expect_h(const Circuit& c, std::size_t site) {
  if (site >= c.ops.size()) fail("mutation site out of range");
  const auto* g = std::get_if<HGate>(&c.ops[site]);
  if (g == nullptr) fail("op at site " + std::to_string(site) + " is not an h gate");
  return *g;
}

const CRkDagGate& expect_crk(const Circuit& c, std::size_t site) {
  if (site >= c.ops.size()) fail("mutation site out of range");
  const auto* g = std::get_if<CRkDagGate>(&c.ops[site]);
  if (g == nullptr) fail("op at site " + std::to_string(site) + " is not a crkdag gate");
  return *g;
}

const CUGate& expect_cu(const Circuit& c, std::size_t site) {
  if (site >= c.ops.size()) fail("mutation site out of range");
  const auto* g = std::get_if<CUGate>(&c.ops[site]);
  if (g == nullptr) fail("op at site " + std::to_string(site) + " is not a cu gate");
  return *g;
}

int require(const std::optional<int>& v, const char* what) {
  if (!v) fail(std::string("mutation needs parameter: ") + what);
  return *v;
}

}  // namespace

std::string to_string(MutationClass cls) {
  for (const auto& [c, name] : kClassNames) {
    if (c == cls) return name;
  }
  return "?";
}

MutationClass mutation_class_from_string(const std::string& name) {
  for (const auto& [c, n] : kClassNames) {
    if (name == n) return c;
  }
  fail("unknown mutation class '" + name + "'");
}

const std::vector<MutationClass>& all_mutation_classes() {
  static const std::vector<MutationClass> all = [] {
    std::vector<MutationClass> v;
    for (const auto& [c, name] : kClassNames) v.push_back(c);
    return v;
  }();
  return all;
}

std::string MutationSpec::describe() const {
  std::string s = to_string(cls) + "@" + std::to_string(site);
  if (new_k) s += " k->" + std::to_string(*new_k);
  if (new_control) s += " c->P" + std::to_string(*new_control);
  if (new_target) s += " t->P" + std::to_string(*new_target);
  if (symbol) s += " r" + std::to_string(*symbol);
  if (new_phase_target) s += "->H" + std::to_string(*new_phase_target);
  if (qubit) s += " q=" + std::to_string(*qubit);
  return s;
}

Circuit mutate(const Circuit& c, const MutationSpec& m) {
  Circuit out = c;
  auto& ops = out.ops;
  switch (m.cls) {
    case MutationClass::HDrop: {
      expect_h(c, m.site);
      ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(m.site));
      break;
    }
    case MutationClass::HDup: {
      const HGate g = expect_h(c, m.site);
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(m.site) + 1, g);
      break;
    }
    case MutationClass::HPhaseAdd: {
      if (m.site > c.ops.size()) fail("insertion site out of range");
      int l = require(m.qubit, "qubit (phase index)");
      if (l < 1 || l > c.p) fail("phase qubit index out of range");
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(m.site), HGate{phase(l)});
      break;
    }
    case MutationClass::CrkDrop: {
      expect_crk(c, m.site);
      ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(m.site));
      break;
    }
    case MutationClass::CrkExtra: {
      const CRkDagGate g = expect_crk(c, m.site);
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(m.site) + 1, g);
      break;
    }
    case MutationClass::CrkWrongK: {
      CRkDagGate g = expect_crk(c, m.site);
      int k = require(m.new_k, "new-k");
      if (k < 2) fail("k must be >= 2");
      if (k == g.k) fail("new k equals original");
      g.k = k;
      ops[m.site] = g;
      break;
    }
    case MutationClass::CrkWrongCtrl: {
      CRkDagGate g = expect_crk(c, m.site);
      int ctrl = require(m.new_control, "new-control");
      if (ctrl < 1 || ctrl > c.n) fail("control index out of range");
      if (ctrl == g.control.index) fail("new control equals original");
      if (ctrl == g.target.index) fail("control must differ from target");
      g.control = precision(ctrl);
      ops[m.site] = g;
      break;
    }
    case MutationClass::CrkWrongTgt: {
      CRkDagGate g = expect_crk(c, m.site);
      int tgt = require(m.new_target, "new-target");
      if (tgt < 1 || tgt > c.n) fail("target index out of range");
      if (tgt == g.target.index) fail("new target equals original");
      if (tgt == g.control.index) fail("target must differ from control");
      g.target = precision(tgt);
      ops[m.site] = g;
      break;
    }
    case MutationClass::MEarly: {
      if (m.site > trailing_measure_start(c)) {
        fail("M_EARLY site must precede the final measurement layer");
      }
      int j = require(m.qubit, "qubit (precision index)");
      if (j < 1 || j > c.n) fail("precision qubit index out of range");
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(m.site),
                 MeasureGate{precision(j)});
      break;
    }
    case MutationClass::MDrop: {
      if (m.site >= c.ops.size()) fail("mutation site out of range");
      if (!std::holds_alternative<MeasureGate>(c.ops[m.site])) {
        fail("op at site " + std::to_string(m.site) + " is not a measure gate");
      }
      ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(m.site));
      break;
    }
    case MutationClass::MPhase: {
      if (m.site > c.ops.size()) fail("insertion site out of range");
      int l = require(m.qubit, "qubit (phase index)");
      if (l < 1 || l > c.p) fail("phase qubit index out of range");
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(m.site),
                 MeasureGate{phase(l)});
      break;
    }
    case MutationClass::CuDrop: {
      expect_cu(c, m.site);
      ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(m.site));
      break;
    }
    case MutationClass::CuExtra: {
      const CUGate g = expect_cu(c, m.site);
      ops.insert(ops.begin() + static_cast<std::ptrdiff_t>(m.site) + 1, g);
      break;
    }
    case MutationClass::CuWrongCtrl: {
      CUGate g = expect_cu(c, m.site);
      int ctrl = require(m.new_control, "new-control");
      if (ctrl < 1 || ctrl > c.n) fail("control index out of range");
      if (ctrl == g.control.index) fail("new control equals original");
      g.control = precision(ctrl);
      ops[m.site] = g;
      break;
    }
    case MutationClass::CuWrongTgt: {
      CUGate g = expect_cu(c, m.site);
      int l = require(m.symbol, "symbol");
      int tgt = require(m.new_phase_target, "new-target (phase index)");
      if (l < 1 || l > c.p) fail("symbol index out of range");
      if (tgt < 1 || tgt > c.p) fail("phase target index out of range");
      if (g.target_map[static_cast<std::size_t>(l - 1)] == tgt) {
        fail("new phase target equals original");
      }
      g.target_map[static_cast<std::size_t>(l - 1)] = tgt;
      ops[m.site] = g;
      break;
    }
  }
  validate_circuit(out);
  return out;
}

std::vector<std::size_t> applicable_sites(const Circuit& c, MutationClass cls) {
  std::vector<std::size_t> sites;
  auto collect = [&](auto pred) {
    for (std::size_t i = 0; i < c.ops.size(); ++i) {
      if (pred(c.ops[i])) sites.push_back(i);
    }
  };
  switch (cls) {
    case MutationClass::HDrop:
    case MutationClass::HDup:
      collect([](const GateOp& op) { return std::holds_alternative<HGate>(op); });
      break;
    case MutationClass::CrkDrop:
    case MutationClass::CrkExtra:
    case MutationClass::CrkWrongK:
    case MutationClass::CrkWrongCtrl:
    case MutationClass::CrkWrongTgt:
      collect([](const GateOp& op) { return std::holds_alternative<CRkDagGate>(op); });
      break;
    case MutationClass::CuDrop:
    case MutationClass::CuExtra:
    case MutationClass::CuWrongCtrl:
    case MutationClass::CuWrongTgt:
      collect([](const GateOp& op) { return std::holds_alternative<CUGate>(op); });
      break;
    case MutationClass::MDrop:
      collect([](const GateOp& op) { return std::holds_alternative<MeasureGate>(op); });
      break;
    case MutationClass::HPhaseAdd:
    case MutationClass::MEarly:
      sites.push_back(leading_h_run(c));
      break;
    case MutationClass::MPhase:
      sites.push_back(c.ops.size());
      break;
  }
  return sites;
}

std::vector<std::pair<MutationSpec, Circuit>> enumerate_mutants(
    const Circuit& c, const std::set<MutationClass>& classes) {
  std::vector<std::pair<MutationSpec, Circuit>> out;
  const std::string parent = serialize_circuit(c);
  std::unordered_set<std::string> seen;
  seen.insert(parent);

  auto add = [&](MutationSpec spec) {
    Circuit mut = mutate(c, spec);
    std::string key = serialize_circuit(mut);
    if (seen.insert(key).second) out.emplace_back(std::move(spec), std::move(mut));
  };

  for (MutationClass cls : classes) {
    const std::vector<std::size_t> sites = applicable_sites(c, cls);
    for (std::size_t site : sites) {
      MutationSpec spec;
      spec.cls = cls;
      spec.site = site;
      switch (cls) {
        case MutationClass::HDrop:
        case MutationClass::HDup:
        case MutationClass::CrkDrop:
        case MutationClass::CrkExtra:
        case MutationClass::MDrop:
        case MutationClass::CuDrop:
        case MutationClass::CuExtra:
          add(spec);
          break;
        case MutationClass::HPhaseAdd:
        case MutationClass::MPhase:
          for (int l = 1; l <= c.p; ++l) {
            spec.qubit = l;
            add(spec);
          }
          break;
        case MutationClass::MEarly:
          for (int j = 1; j <= c.n; ++j) {
            spec.qubit = j;
            add(spec);
          }
          break;
        case MutationClass::CrkWrongK: {
          const CRkDagGate& g = expect_crk(c, site);
          for (int k = 2; k <= c.n + 1; ++k) {
            if (k == g.k) continue;
            spec.new_k = k;
            add(spec);
          }
          break;
        }
        case MutationClass::CrkWrongCtrl: {
          const CRkDagGate& g = expect_crk(c, site);
          for (int ctrl = 1; ctrl <= c.n; ++ctrl) {
            if (ctrl == g.control.index || ctrl == g.target.index) continue;
            spec.new_control = ctrl;
            add(spec);
          }
          break;
        }
        case MutationClass::CrkWrongTgt: {
          const CRkDagGate& g = expect_crk(c, site);
          for (int tgt = 1; tgt <= c.n; ++tgt) {
            if (tgt == g.target.index || tgt == g.control.index) continue;
            spec.new_target = tgt;
            add(spec);
          }
          break;
        }
        case MutationClass::CuWrongCtrl: {
          const CUGate& g = expect_cu(c, site);
          for (int ctrl = 1; ctrl <= c.n; ++ctrl) {
            if (ctrl == g.control.index) continue;
            spec.new_control = ctrl;
            add(spec);
          }
          break;
        }
        case MutationClass::CuWrongTgt: {
          const CUGate& g = expect_cu(c, site);
          for (int l = 1; l <= c.p; ++l) {
            for (int tgt = 1; tgt <= c.p; ++tgt) {
              if (tgt == g.target_map[static_cast<std::size_t>(l - 1)]) continue;
              spec.symbol = l;
              spec.new_phase_target = tgt;
              add(spec);
            }
          }
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace qpecheck
