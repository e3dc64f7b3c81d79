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

#include "qpecheck/circuit.hpp"

#include <cctype>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace qpecheck {

std::string QubitRef::to_string() const {
  return (role == QubitRole::Precision ? "P" : "H") + std::to_string(index);
}

std::vector<int> identity_map(int p) {
  std::vector<int> map(static_cast<std::size_t>(p));
  std::iota(map.begin(), map.end(), 1);
  return map;
}

bool is_identity_map(const std::vector<int>& map) {
  for (std::size_t l = 0; l < map.size(); ++l) {
    if (map[l] != static_cast<int>(l) + 1) return false;
  }
  return true;
}

namespace {

void check_ref(const Circuit& c, const QubitRef& q, const char* where) {
  const int limit = q.role == QubitRole::Precision ? c.n : c.p;
  if (q.index < 1 || q.index > limit) {
    throw std::invalid_argument(std::string(where) + ": qubit " +
                                q.to_string() + " out of range");
  }
}

}  // namespace

void validate_circuit(const Circuit& c) {
  if (c.n < 1) throw std::invalid_argument("circuit needs n >= 1");
  if (c.p < 0) throw std::invalid_argument("circuit needs p >= 0");
  if (c.max_h < 1) throw std::invalid_argument("circuit needs maxh >= 1");
  for (const GateOp& op : c.ops) {
    if (const auto* h = std::get_if<HGate>(&op)) {
      check_ref(c, h->target, "h");
    } else if (const auto* rk = std::get_if<CRkDagGate>(&op)) {
      if (rk->k < 2) throw std::invalid_argument("crkdag: k must be >= 2");
      if (rk->control.role != QubitRole::Precision ||
          rk->target.role != QubitRole::Precision) {
        throw std::invalid_argument("crkdag: control and target must be precision qubits");
      }
      check_ref(c, rk->control, "crkdag");
      check_ref(c, rk->target, "crkdag");
      if (rk->control.index == rk->target.index) {
        throw std::invalid_argument("crkdag: control and target must differ");
      }
    } else if (const auto* cu = std::get_if<CUGate>(&op)) {
      if (cu->control.role != QubitRole::Precision) {
        throw std::invalid_argument("cu: control must be a precision qubit");
      }
      check_ref(c, cu->control, "cu");
      if (cu->target_map.size() != static_cast<std::size_t>(c.p)) {
        throw std::invalid_argument("cu: target map must be total on 1..p");
      }
      for (int tgt : cu->target_map) {
        if (tgt < 1 || tgt > c.p) {
          throw std::invalid_argument("cu: map target H" + std::to_string(tgt) +
                                      " out of range");
        }
      }
    } else if (const auto* ms = std::get_if<MeasureGate>(&op)) {
      check_ref(c, ms->target, "measure");
    }
  }
}

std::string op_to_string(const GateOp& op, int p) {
  std::ostringstream out;
  if (const auto* h = std::get_if<HGate>(&op)) {
    out << "h " << h->target.to_string();
  } else if (const auto* rk = std::get_if<CRkDagGate>(&op)) {
    out << "crkdag k=" << rk->k << " c=" << rk->control.to_string() << " t="
        << rk->target.to_string();
  } else if (const auto* cu = std::get_if<CUGate>(&op)) {
    out << "cu c=" << cu->control.to_string();
    if (!is_identity_map(cu->target_map)) {
      out << " map=";
      for (std::size_t l = 0; l < cu->target_map.size(); ++l) {
        if (l > 0) out << ",";
        out << (l + 1) << ":H" << cu->target_map[l];
      }
    }
    (void)p;
  } else if (const auto* ms = std::get_if<MeasureGate>(&op)) {
    out << "measure " << ms->target.to_string();
  }
  return out.str();
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qpe n=" << c.n << " p=" << c.p << " maxh=" << c.max_h << "\n";
  for (const GateOp& op : c.ops) out << op_to_string(op, c.p) << "\n";
  return out.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

QubitRef parse_qubit(const std::string& s, int lineno) {
  if (s.size() < 2 || (s[0] != 'P' && s[0] != 'H')) {
    throw ParseError(lineno, "bad qubit reference '" + s + "'");
  }
  int idx = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!isdigit(static_cast<unsigned char>(s[i]))) {
      throw ParseError(lineno, "bad qubit reference '" + s + "'");
    }
    idx = idx * 10 + (s[i] - '0');
    if (idx > 1'000'000) throw ParseError(lineno, "qubit index too large");
  }
  if (idx < 1) throw ParseError(lineno, "qubit indices are 1-based");
  return {s[0] == 'P' ? QubitRole::Precision : QubitRole::Phase, idx};
}

int parse_int(const std::string& s, int lineno) {
  if (s.empty()) throw ParseError(lineno, "expected integer");
  long v = 0;
  for (char ch : s) {
    if (!isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError(lineno, "bad integer '" + s + "'");
    }
    v = v * 10 + (ch - '0');
    if (v > 1'000'000'000) throw ParseError(lineno, "integer too large");
  }
  return static_cast<int>(v);
}

// Splits "key=value" field tokens; rejects duplicates and unknown keys.
struct Fields {
  std::vector<std::pair<std::string, std::string>> kv;
  int lineno;

  std::string take(const std::string& key, bool required) {
    for (auto it = kv.begin(); it != kv.end(); ++it) {
      if (it->first == key) {
        std::string v = it->second;
        kv.erase(it);
        return v;
      }
    }
    if (required) throw ParseError(lineno, "missing field '" + key + "='");
    return {};
  }

  void finish() const {
    if (!kv.empty()) {
      throw ParseError(lineno, "unexpected field '" + kv.front().first + "='");
    }
  }
};

Fields parse_fields(const std::vector<std::string>& toks, std::size_t from,
                    int lineno) {
  Fields f;
  f.lineno = lineno;
  for (std::size_t i = from; i < toks.size(); ++i) {
    auto eq = toks[i].find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError(lineno, "expected key=value, got '" + toks[i] + "'");
    }
    std::string key = toks[i].substr(0, eq);
    for (const auto& [k, v] : f.kv) {
      if (k == key) throw ParseError(lineno, "duplicate field '" + key + "='");
    }
    f.kv.emplace_back(key, toks[i].substr(eq + 1));
  }
  return f;
}

std::vector<int> parse_map(const std::string& text, int p, int lineno) {
  std::vector<int> map(static_cast<std::size_t>(p), 0);
  std::istringstream in(text);
  std::string entry;
  int seen = 0;
  while (std::getline(in, entry, ',')) {
    auto colon = entry.find(':');
    if (colon == std::string::npos) {
      throw ParseError(lineno, "bad map entry '" + entry + "'");
    }
    int l = parse_int(entry.substr(0, colon), lineno);
    QubitRef tgt = parse_qubit(entry.substr(colon + 1), lineno);
    if (tgt.role != QubitRole::Phase) {
      throw ParseError(lineno, "cu map targets must be phase qubits");
    }
    if (l < 1 || l > p) {
      throw ParseError(lineno, "map symbol index " + std::to_string(l) +
                                   " out of range 1.." + std::to_string(p));
    }
    if (map[static_cast<std::size_t>(l - 1)] != 0) {
      throw ParseError(lineno, "duplicate map entry for symbol " + std::to_string(l));
    }
    map[static_cast<std::size_t>(l - 1)] = tgt.index;
    ++seen;
  }
  if (seen != p) {
    throw ParseError(lineno, "cu map must list every symbol 1.." + std::to_string(p));
  }
  return map;
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool have_header = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::vector<std::string> toks = tokenize(raw);
    if (toks.empty()) continue;

    if (toks[0] == "qpe") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      Fields f = parse_fields(toks, 1, lineno);
      c.n = parse_int(f.take("n", true), lineno);
      c.p = parse_int(f.take("p", true), lineno);
      std::string maxh = f.take("maxh", false);
      c.max_h = maxh.empty() ? 2 : parse_int(maxh, lineno);
      f.finish();
      if (c.n < 1) throw ParseError(lineno, "n must be >= 1");
      if (c.max_h < 1) throw ParseError(lineno, "maxh must be >= 1");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "missing 'qpe' header line");

    if (toks[0] == "h") {
      if (toks.size() != 2) throw ParseError(lineno, "usage: h <qubit>");
      c.ops.emplace_back(HGate{parse_qubit(toks[1], lineno)});
    } else if (toks[0] == "crkdag") {
      Fields f = parse_fields(toks, 1, lineno);
      CRkDagGate g;
      g.k = parse_int(f.take("k", true), lineno);
      g.control = parse_qubit(f.take("c", true), lineno);
      g.target = parse_qubit(f.take("t", true), lineno);
      f.finish();
      if (g.k < 2) throw ParseError(lineno, "crkdag needs k >= 2");
      c.ops.emplace_back(g);
    } else if (toks[0] == "cu") {
      Fields f = parse_fields(toks, 1, lineno);
      CUGate g;
      g.control = parse_qubit(f.take("c", true), lineno);
      std::string map = f.take("map", false);
      f.finish();
      g.target_map = map.empty() ? identity_map(c.p) : parse_map(map, c.p, lineno);
      c.ops.emplace_back(g);
    } else if (toks[0] == "measure") {
      if (toks.size() != 2) throw ParseError(lineno, "usage: measure <qubit>");
      c.ops.emplace_back(MeasureGate{parse_qubit(toks[1], lineno)});
    } else {
      throw ParseError(lineno, "unknown gate '" + toks[0] + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing 'qpe' header line");
  try {
    validate_circuit(c);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  return c;
}

Circuit generate_qpe(int n, int p) {
  if (n < 1 || p < 1) throw std::invalid_argument("generate_qpe needs n, p >= 1");
  if (n > 30) throw std::invalid_argument("generate_qpe: n > 30 would overflow the CU count");
  Circuit c;
  c.n = n;
  c.p = p;
  c.max_h = 2;
  for (int j = 1; j <= n; ++j) c.ops.emplace_back(HGate{precision(j)});
  for (int j = 1; j <= n; ++j) {
    const std::uint64_t reps = 1ull << (j - 1);
    for (std::uint64_t r = 0; r < reps; ++r) {
      c.ops.emplace_back(CUGate{precision(j), identity_map(p)});
    }
  }
  // iQFT without terminal swaps: each control fires after its own H, onto
  // targets still in superposition.
  for (int i = n; i >= 1; --i) {
    c.ops.emplace_back(HGate{precision(i)});
    for (int t = i - 1; t >= 1; --t) {
      c.ops.emplace_back(CRkDagGate{i - t + 1, precision(i), precision(t)});
    }
  }
  for (int j = 1; j <= n; ++j) c.ops.emplace_back(MeasureGate{precision(j)});
  return c;
}

std::string circuit_digest(const Circuit& c) {
  const std::string text = serialize_circuit(c);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qpecheck
