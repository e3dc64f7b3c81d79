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

#include "qpecheck/smtlib.hpp"

#include <map>
#include <sstream>

namespace qpecheck {

namespace {

// SSA emitter: every state component is a chain of zero-argument define-funs
// q_P1_v0, q_P1_v1, ... so the script stays solver-agnostic QF_BV.
class Emitter {
 public:
  Emitter(const Circuit& c) : c_(c), ws_(superposition_width(c.max_h)) {}

  std::string run(PropertyId id, OpRange range, InputTemplate tmpl);

 private:
  std::string lit(std::uint32_t value, int width) const {
    return "#b" + format_bits(value, width);
  }

  std::string cur(const std::string& root) const {
    return root + "_v" + std::to_string(version_.at(root));
  }

  void def(const std::string& root, int width, const std::string& expr) {
    const int v = ++version_[root];
    out_ << "(define-fun " << root << "_v" << v << " () (_ BitVec " << width
         << ") " << expr << ")\n";
  }

  void def_initial(const std::string& root, int width, const std::string& expr) {
    version_[root] = 0;
    out_ << "(define-fun " << root << "_v0 () (_ BitVec " << width << ") "
         << expr << ")\n";
  }

  std::string q_root(QubitRef q) const { return "q_" + q.to_string(); }
  std::string s_root(QubitRef q) const { return "s_" + q.to_string(); }
  std::string r_root(QubitRef q) const { return "r_" + q.to_string(); }
  std::string m_root(QubitRef q) const { return "m_" + q.to_string(); }
  std::string coeff_root(int phase_qubit, int symbol) const {
    return "c_H" + std::to_string(phase_qubit) + "_r" + std::to_string(symbol);
  }

  std::string extract_bit(int bit, const std::string& expr) const {
    return "((_ extract " + std::to_string(bit) + " " + std::to_string(bit) +
           ") " + expr + ")";
  }

  std::string is_even(const std::string& s_name) const {
    return "(= " + extract_bit(0, s_name) + " #b0)";
  }

  // Initial rotation b_j b_{j+1} .. b_n 0..0 for the iQFT input template.
  std::string iqft_pattern(int j) const {
    std::string expr = "b" + std::to_string(j);
    for (int t = j + 1; t <= c_.n; ++t) {
      expr = "(concat " + expr + " b" + std::to_string(t) + ")";
    }
    if (j > 1) expr = "(concat " + expr + " " + lit(0, j - 1) + ")";
    return expr;
  }

  void emit_initials(InputTemplate tmpl);
  void emit_op(const GateOp& op);
  std::vector<std::string> property_clauses(PropertyId id);

  const Circuit& c_;
  const int ws_;
  std::ostringstream out_;
  std::map<std::string, int> version_;
  std::map<std::string, std::string> s_checkpoint_;  // P1: s names after H layer
  std::map<std::string, std::string> m_checkpoint_;  // P3: m names before layer
};

void Emitter::emit_initials(InputTemplate tmpl) {
  for (int j = 1; j <= c_.n; ++j) {
    const QubitRef q = precision(j);
    def_initial(q_root(q), 1, "b" + std::to_string(j));
    if (tmpl == InputTemplate::IqftSym) {
      def_initial(s_root(q), ws_, lit(1, ws_));
      def_initial(r_root(q), c_.n, iqft_pattern(j));
    } else {
      def_initial(s_root(q), ws_, lit(0, ws_));
      def_initial(r_root(q), c_.n, lit(0, c_.n));
    }
    def_initial(m_root(q), 2, lit(0, 2));
  }
  for (int l = 1; l <= c_.p; ++l) {
    const QubitRef q = phase(l);
    def_initial(q_root(q), 1, "#b0");
    def_initial(s_root(q), ws_, lit(0, ws_));
    def_initial(m_root(q), 2, lit(0, 2));
    for (int sym = 1; sym <= c_.p; ++sym) {
      def_initial(coeff_root(l, sym), c_.n + 1, lit(0, c_.n + 1));
    }
  }
}

void Emitter::emit_op(const GateOp& op) {
  if (const auto* h = std::get_if<HGate>(&op)) {
    const QubitRef t = h->target;
    const std::string s_old = cur(s_root(t));
    const std::string bump = "(ite (= " + s_old + " " + lit(c_.max_h + 2, ws_) +
                             ") " + lit(c_.max_h + 1, ws_) + " (bvadd " + s_old +
                             " " + lit(1, ws_) + "))";
    if (t.role == QubitRole::Phase) {
      def(s_root(t), ws_, bump);
      return;
    }
    const std::string q_old = cur(q_root(t));
    const std::string r_old = cur(r_root(t));
    const std::string half = lit(1u << (c_.n - 1), c_.n);
    def(s_root(t), ws_, bump);
    def(q_root(t), 1,
        "(ite " + is_even(s_old) + " " + q_old + " " +
            extract_bit(c_.n - 1, r_old) + ")");
    def(r_root(t), c_.n,
        "(ite (= " + q_old + " #b1) (ite " + is_even(s_old) + " (bvadd " +
            r_old + " " + half + ") (bvsub " + r_old + " " + half + ")) " +
            r_old + ")");
  } else if (const auto* rk = std::get_if<CRkDagGate>(&op)) {
    const std::string delta =
        lit(rk->k <= c_.n ? (1u << (c_.n - rk->k)) : 0u, c_.n);
    const std::string fire = "(and (= " + cur(q_root(rk->control)) +
                             " #b1) (= " + cur(s_root(rk->control)) + " " +
                             lit(2, ws_) + ") (= " + cur(s_root(rk->target)) +
                             " " + lit(1, ws_) + "))";
    const std::string r_old = cur(r_root(rk->target));
    def(r_root(rk->target), c_.n,
        "(ite " + fire + " (bvsub " + r_old + " " + delta + ") " + r_old + ")");
  } else if (const auto* cu = std::get_if<CUGate>(&op)) {
    const std::string fire = "(= " + cur(q_root(cu->control)) + " #b1)";
    for (int sym = 1; sym <= c_.p; ++sym) {
      const std::string root =
          coeff_root(cu->target_map[static_cast<std::size_t>(sym - 1)], sym);
      const std::string old = cur(root);
      def(root, c_.n + 1,
          "(ite " + fire + " (bvadd " + old + " " + lit(1, c_.n + 1) + ") " +
              old + ")");
    }
  } else if (const auto* ms = std::get_if<MeasureGate>(&op)) {
    const std::string old = cur(m_root(ms->target));
    def(m_root(ms->target), 2,
        "(ite (= " + old + " #b00) #b01 (ite (= " + old +
            " #b01) #b10 (ite (= " + old + " #b10) #b11 #b10)))");
  }
}

std::vector<std::string> Emitter::property_clauses(PropertyId id) {
  std::vector<std::string> clauses;
  switch (id) {
    case PropertyId::P1Superposition: {
      for (int j = 1; j <= c_.n; ++j) {
        clauses.push_back("(= " + s_checkpoint_.at(s_root(precision(j))) + " " +
                          lit(1, ws_) + ")");
      }
      for (int j = 1; j <= c_.n; ++j) {
        clauses.push_back("(= " + cur(s_root(precision(j))) + " " + lit(2, ws_) + ")");
      }
      for (int l = 1; l <= c_.p; ++l) {
        clauses.push_back("(= " + cur(s_root(phase(l))) + " " +
                          s_root(phase(l)) + "_v0)");
      }
      break;
    }
    case PropertyId::P2Iqft: {
      for (int j = 1; j <= c_.n; ++j) {
        clauses.push_back("(= " + cur(r_root(precision(j))) + " " +
                          lit(0, c_.n) + ")");
        clauses.push_back("(= " + cur(q_root(precision(j))) + " b" +
                          std::to_string(j) + ")");
      }
      break;
    }
    case PropertyId::P3Measurement: {
      for (int j = 1; j <= c_.n; ++j) {
        clauses.push_back("(= " + m_checkpoint_.at(m_root(precision(j))) +
                          " #b00)");
      }
      for (int l = 1; l <= c_.p; ++l) {
        clauses.push_back("(= " + m_checkpoint_.at(m_root(phase(l))) + " #b00)");
      }
      for (int j = 1; j <= c_.n; ++j) {
        clauses.push_back("(= " + cur(m_root(precision(j))) + " #b01)");
      }
      for (int l = 1; l <= c_.p; ++l) {
        clauses.push_back("(= " + cur(m_root(phase(l))) + " #b00)");
      }
      break;
    }
    case PropertyId::P4Phase: {
      if (c_.p == 0) break;
      std::string sum;
      for (int j = 1; j <= c_.n; ++j) {
        const std::string term = "(ite (= b" + std::to_string(j) + " #b1) " +
                                 lit(1u << (j - 1), c_.n + 1) + " " +
                                 lit(0, c_.n + 1) + ")";
        sum = j == 1 ? term : "(bvadd " + sum + " " + term + ")";
      }
      out_ << "(define-fun p4_expected () (_ BitVec " << c_.n + 1 << ") " << sum
           << ")\n";
      for (int h = 1; h <= c_.p; ++h) {
        for (int sym = 1; sym <= c_.p; ++sym) {
          clauses.push_back("(= " + cur(coeff_root(h, sym)) + " " +
                            (h == sym ? std::string("p4_expected")
                                      : lit(0, c_.n + 1)) +
                            ")");
        }
      }
      break;
    }
  }
  return clauses;
}

std::string Emitter::run(PropertyId id, OpRange range, InputTemplate tmpl) {
  out_ << "(set-logic QF_BV)\n";
  out_ << "; " << to_string(id) << " for circuit " << circuit_digest(c_)
       << " (n=" << c_.n << " p=" << c_.p << ")\n";
  out_ << "; unsat = property holds; a sat model is a violating assignment\n";
  for (int j = 1; j <= c_.n; ++j) {
    out_ << "(declare-const b" << j << " (_ BitVec 1))\n";
  }
  emit_initials(tmpl);

  auto snapshot_s = [&] {
    for (int j = 1; j <= c_.n; ++j) {
      s_checkpoint_[s_root(precision(j))] = cur(s_root(precision(j)));
    }
  };
  auto snapshot_m = [&] {
    for (int j = 1; j <= c_.n; ++j) {
      m_checkpoint_[m_root(precision(j))] = cur(m_root(precision(j)));
    }
    for (int l = 1; l <= c_.p; ++l) {
      m_checkpoint_[m_root(phase(l))] = cur(m_root(phase(l)));
    }
  };

  const std::size_t prefix = leading_h_prefix(c_);
  const std::size_t layer = measurement_layer_start(c_);
  if (prefix == 0) snapshot_s();
  if (layer == 0) snapshot_m();
  for (std::size_t i = range.first; i < range.second; ++i) {
    emit_op(c_.ops[i]);
    if (i + 1 == prefix) snapshot_s();
    if (i + 1 == layer) snapshot_m();
  }

  const std::vector<std::string> clauses = property_clauses(id);
  if (clauses.empty()) {
    out_ << "(assert false)\n";
  } else if (clauses.size() == 1) {
    out_ << "(assert (not " << clauses.front() << "))\n";
  } else {
    out_ << "(assert (not (and";
    for (const std::string& cl : clauses) out_ << "\n  " << cl;
    out_ << ")))\n";
  }
  out_ << "(check-sat)\n(get-model)\n";
  return out_.str();
}

}  // namespace

std::string emit_smtlib(const Circuit& c, PropertyId id,
                        std::optional<OpRange> p2_block) {
  validate_circuit(c);
  OpRange range{0, c.ops.size()};
  InputTemplate tmpl = InputTemplate::Fresh;
  if (id == PropertyId::P2Iqft) {
    range = p2_block.value_or(detect_iqft_block(c));
    validate_p2_block(c, range);
    tmpl = InputTemplate::IqftSym;
  }
  Emitter emitter(c);
  return emitter.run(id, range, tmpl);
}

}  // namespace qpecheck
