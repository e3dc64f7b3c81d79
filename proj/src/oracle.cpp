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

#include "qpecheck/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <json.hpp>

#include "qpecheck/abstract.hpp"
#include "qpecheck/mutation.hpp"

namespace qpecheck {

namespace {

using Amp = std::complex<double>;
using State = std::vector<Amp>;

constexpr double kNormTol = 1e-12;
constexpr double kBranchEps = 1e-30;

int parse_bits(const std::string& bits, int expect, const char* what) {
  if (static_cast<int>(bits.size()) != expect) {
    throw std::invalid_argument(std::string(what) + " must have length " +
                                std::to_string(expect));
  }
  int v = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument(std::string(what) + " must be a basis bit-string");
    }
    v = (v << 1) | (ch - '0');
  }
  return v;
}

struct Simulator {
  const Circuit& c;
  int total;                   // n + p
  std::vector<State> branches; // projected, unnormalized; weights are embedded

  // Qubit wire -> bit position inside an amplitude index (P1 is the top bit).
  int bit_pos(QubitRef q) const {
    return total - 1 - static_cast<int>(global_index(c, q));
  }

  double norm() const {
    double s = 0;
    for (const State& st : branches) {
      for (const Amp& a : st) s += std::norm(a);
    }
    return s;
  }

  void check_norm() const {
    if (std::abs(norm() - 1.0) > kNormTol) {
      throw std::logic_error("statevector norm drifted past tolerance");
    }
  }

  void hadamard(QubitRef q) {
    const int bit = bit_pos(q);
    const std::size_t stride = std::size_t{1} << bit;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (State& st : branches) {
      for (std::size_t i = 0; i < st.size(); ++i) {
        if (i & stride) continue;
        const Amp a = st[i];
        const Amp b = st[i | stride];
        st[i] = (a + b) * inv_sqrt2;
        st[i | stride] = (a - b) * inv_sqrt2;
      }
    }
  }

  void phase_if(std::size_t require_mask, Amp factor) {
    for (State& st : branches) {
      for (std::size_t i = 0; i < st.size(); ++i) {
        if ((i & require_mask) == require_mask) st[i] *= factor;
      }
    }
  }

  void crk_dag(const CRkDagGate& g) {
    const double angle = -2.0 * std::numbers::pi / std::pow(2.0, g.k);
    const std::size_t msk = (std::size_t{1} << bit_pos(g.control)) |
                            (std::size_t{1} << bit_pos(g.target));
    phase_if(msk, std::polar(1.0, angle));
  }

  void cu(const CUGate& g, const DiagonalUnitary& u) {
    const std::size_t ctrl = std::size_t{1} << bit_pos(g.control);
    for (std::size_t l = 0; l < g.target_map.size(); ++l) {
      const double angle = 2.0 * std::numbers::pi * u.phis[l].value();
      const std::size_t wire = std::size_t{1} << bit_pos(phase(g.target_map[l]));
      phase_if(ctrl | wire, std::polar(1.0, angle));
    }
  }

  void measure(QubitRef q) {
    const std::size_t msk = std::size_t{1} << bit_pos(q);
    std::vector<State> next;
    for (State& st : branches) {
      State zero(st.size(), Amp{});
      State one(st.size(), Amp{});
      double w0 = 0, w1 = 0;
      for (std::size_t i = 0; i < st.size(); ++i) {
        if (i & msk) {
          one[i] = st[i];
          w1 += std::norm(st[i]);
        } else {
          zero[i] = st[i];
          w0 += std::norm(st[i]);
        }
      }
      if (w0 > kBranchEps) next.push_back(std::move(zero));
      if (w1 > kBranchEps) next.push_back(std::move(one));
    }
    branches = std::move(next);
  }

  Distribution precision_distribution() const {
    const int p = c.p;
    Distribution dist(std::size_t{1} << c.n, 0.0);
    for (const State& st : branches) {
      for (std::size_t i = 0; i < st.size(); ++i) {
        dist[i >> p] += std::norm(st[i]);
      }
    }
    return dist;
  }
};

}  // namespace

double total_variation(const Distribution& a, const Distribution& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / 2.0;
}

Distribution simulate(const Circuit& c, const DiagonalUnitary& u,
                      const std::string& eigenstate,
                      const std::string& precision_input) {
  if (c.n + c.p > 12) {
    throw std::invalid_argument("simulate: n + p must be <= 12");
  }
  if (static_cast<int>(u.phis.size()) != c.p) {
    throw std::invalid_argument("simulate: unitary needs one phase per phase qubit");
  }
  const int prec = parse_bits(precision_input, c.n, "precision input");
  const int eigen = parse_bits(eigenstate, c.p, "eigenstate");

  Simulator sim{c, c.n + c.p, {}};
  State init(std::size_t{1} << sim.total, Amp{});
  init[(static_cast<std::size_t>(prec) << c.p) | static_cast<std::size_t>(eigen)] = 1.0;
  sim.branches.push_back(std::move(init));

  for (const GateOp& op : c.ops) {
    if (const auto* h = std::get_if<HGate>(&op)) {
      sim.hadamard(h->target);
    } else if (const auto* rk = std::get_if<CRkDagGate>(&op)) {
      sim.crk_dag(*rk);
    } else if (const auto* g = std::get_if<CUGate>(&op)) {
      sim.cu(*g, u);
    } else if (const auto* ms = std::get_if<MeasureGate>(&op)) {
      sim.measure(ms->target);
    }
    sim.check_norm();
  }
  return sim.precision_distribution();
}

namespace {

std::string eigen_basis(int p) {
  std::string s(static_cast<std::size_t>(p), '0');
  s[0] = '1';
  return s;
}

Distribution run_sweep(const Circuit& c, int n, int p, int t) {
  DiagonalUnitary u;
  u.phis.assign(static_cast<std::size_t>(p), Turn{0, 1});
  u.phis[0] = Turn{t, std::int64_t{1} << n};
  return simulate(c, u, eigen_basis(p), std::string(static_cast<std::size_t>(n), '0'));
}

}  // namespace

CrossValidationReport cross_validate(int n, int p) {
  CrossValidationReport report;
  report.n = n;
  report.p = p;
  const Circuit correct = generate_qpe(n, p);
  const int cap = 1 << n;

  std::vector<Distribution> reference;
  report.all_exact = true;
  for (int t = 0; t < cap; ++t) {
    Distribution dist = run_sweep(correct, n, p, t);
    int outcome = static_cast<int>(std::max_element(dist.begin(), dist.end()) -
                                   dist.begin());
    double prob = dist[static_cast<std::size_t>(outcome)];
    if (outcome != t || std::abs(prob - 1.0) > 1e-9) report.all_exact = false;
    report.sweeps.push_back({t, outcome, prob});
    reference.push_back(std::move(dist));
  }

  // One representative mutant per gate family.
  std::vector<MutationSpec> picks;
  {
    MutationSpec h;
    h.cls = MutationClass::HDrop;
    h.site = 0;
    picks.push_back(h);
    const auto crk_sites = applicable_sites(correct, MutationClass::CrkWrongK);
    if (!crk_sites.empty()) {
      const auto& g = std::get<CRkDagGate>(correct.ops[crk_sites.front()]);
      MutationSpec m;
      m.cls = MutationClass::CrkWrongK;
      m.site = crk_sites.front();
      m.new_k = g.k + 1;
      picks.push_back(m);
    }
    MutationSpec me;
    me.cls = MutationClass::MEarly;
    me.site = applicable_sites(correct, MutationClass::MEarly).front();
    me.qubit = 1;
    picks.push_back(me);
    MutationSpec cd;
    cd.cls = MutationClass::CuDrop;
    cd.site = applicable_sites(correct, MutationClass::CuDrop).front();
    picks.push_back(cd);
  }

  for (const MutationSpec& spec : picks) {
    const Circuit mut = mutate(correct, spec);
    double max_tv = 0;
    for (int t = 0; t < cap; ++t) {
      max_tv = std::max(max_tv, total_variation(run_sweep(mut, n, p, t),
                                                reference[static_cast<std::size_t>(t)]));
    }
    report.mutant_divergences.push_back({spec.describe(), max_tv});
  }
  return report;
}

std::string to_json(const CrossValidationReport& report) {
  using nlohmann::json;
  json sweeps = json::array();
  for (const SweepEntry& e : report.sweeps) {
    sweeps.push_back({{"t", e.t}, {"outcome", e.outcome}, {"prob", e.prob}});
  }
  json divergences = json::array();
  for (const MutantDivergence& d : report.mutant_divergences) {
    divergences.push_back({{"mutation", d.mutation}, {"max_tv", d.max_tv}});
  }
  json doc = {{"n", report.n},
              {"p", report.p},
              {"all_exact", report.all_exact},
              {"sweeps", sweeps},
              {"mutant_divergences", divergences}};
  return doc.dump(2) + "\n";
}

}  // namespace qpecheck
