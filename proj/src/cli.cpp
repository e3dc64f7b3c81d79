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

#include "qpecheck/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qpecheck/bench.hpp"
#include "qpecheck/mutation.hpp"
#include "qpecheck/smtlib.hpp"

namespace qpecheck {

namespace {

int input_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitInput;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return out.good();
}

int write_or_fail(const std::string& path, const std::string& content, bool force) {
  if (!force && std::filesystem::exists(path)) {
    return input_error("refusing to overwrite '" + path + "' (use --force)");
  }
  if (!write_file(path, content)) {
    return input_error("cannot write '" + path + "'");
  }
  return kExitPass;
}

std::optional<Circuit> load_circuit(const std::string& path, int& exit_code) {
  auto text = read_file(path);
  if (!text) {
    exit_code = input_error("cannot read '" + path + "'");
    return std::nullopt;
  }
  try {
    return parse_circuit(*text);
  } catch (const ParseError& e) {
    exit_code = input_error(path + ": " + e.what());
    return std::nullopt;
  }
}

std::string resolve_solver(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("QPECHECK_SOLVER")) {
    if (*env != '\0') return env;
  }
  return "z3";
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

void print_summary(const Circuit& c, const VerificationReport& report) {
  std::cout << "circuit qpe n=" << c.n << " p=" << c.p << " (digest "
            << report.circuit_digest << "), engine " << to_string(report.engine)
            << "\n";
  for (const PropertyResult& res : report.properties) {
    char line[64];
    std::snprintf(line, sizeof line, "%-18s %-7s %8.3f s",
                  to_string(res.id).c_str(),
                  res.status == PropStatus::Pass   ? "PASS"
                  : res.status == PropStatus::Fail ? "FAIL"
                                                   : "SKIPPED",
                  res.time_s);
    std::cout << line;
    if (res.counterexample) {
      const Counterexample& ce = *res.counterexample;
      std::cout << "   b=" << ce.assignment.to_string() << " at "
                << ce.step.to_string() << ", qubit " << ce.qubit.to_string()
                << ", component " << ce.component << ": expected " << ce.expected
                << ", actual " << ce.actual;
    }
    if (res.note) std::cout << "   [" << *res.note << "]";
    std::cout << "\n";
  }
  std::cout << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
}

std::optional<OpRange> parse_block(const std::string& text, int& exit_code) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    exit_code = input_error("--p2-block expects start:end");
    return std::nullopt;
  }
  try {
    std::size_t start = std::stoul(text.substr(0, colon));
    std::size_t end = std::stoul(text.substr(colon + 1));
    return OpRange{start, end};
  } catch (const std::exception&) {
    exit_code = input_error("--p2-block expects start:end");
    return std::nullopt;
  }
}

}  // namespace

int cmd_generate(const GenerateArgs& args) {
  Circuit c;
  try {
    c = generate_qpe(args.n, args.p);
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  }
  const int rc = write_or_fail(args.out_path, serialize_circuit(c), args.force);
  if (rc == kExitPass) {
    std::cout << "wrote qpe(n=" << args.n << ", p=" << args.p << "), "
              << c.ops.size() << " ops, to " << args.out_path << "\n";
  }
  return rc;
}

int cmd_verify(const VerifyArgs& args) {
  int exit_code = kExitPass;
  auto circuit = load_circuit(args.circuit_path, exit_code);
  if (!circuit) return exit_code;

  VerifyOptions opts;
  if (args.engine == "smt") {
    opts.engine = Engine::Smt;
    opts.solver_cmd = resolve_solver(args.solver_cmd);
  } else if (args.engine != "internal") {
    return input_error("--engine must be internal or smt");
  }
  opts.solver_timeout_s = args.solver_timeout_s;
  opts.p2_block = parse_block(args.p2_block, exit_code);
  if (exit_code != kExitPass) return exit_code;

  VerificationReport report;
  try {
    report = verify_all(*circuit, opts);
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  }

  if (!args.dump_trace_path.empty()) {
    const Trace trace =
        interpret(*circuit, BasisAssignment::zeros(circuit->n), InputTemplate::Fresh);
    if (!write_file(args.dump_trace_path, trace_to_json(*circuit, trace))) {
      return input_error("cannot write '" + args.dump_trace_path + "'");
    }
  }
  if (!args.report_path.empty()) {
    if (!write_file(args.report_path, report_to_json(report))) {
      return input_error("cannot write '" + args.report_path + "'");
    }
  }
  print_summary(*circuit, report);
  if (opts.engine == Engine::Smt && report.solver_unavailable) {
    std::cerr << "error: solver command not available: '" << opts.solver_cmd
              << "'\n";
    return kExitNoSolver;
  }
  return report.pass ? kExitPass : kExitFail;
}

int cmd_mutate(const MutateArgs& args) {
  int exit_code = kExitPass;
  auto circuit = load_circuit(args.circuit_path, exit_code);
  if (!circuit) return exit_code;

  MutationClass cls;
  try {
    cls = mutation_class_from_string(args.mutation_class);
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  }

  auto list_sites = [&](std::ostream& out) {
    const auto sites = applicable_sites(*circuit, cls);
    out << "applicable sites for " << to_string(cls) << ":\n";
    for (std::size_t site : sites) {
      out << "  " << site;
      if (site < circuit->ops.size()) {
        out << "  " << op_to_string(circuit->ops[site], circuit->p);
      } else {
        out << "  (insert at circuit end)";
      }
      out << "\n";
    }
    if (sites.empty()) out << "  (none)\n";
  };

  if (!args.site) {
    list_sites(std::cout);
    return kExitPass;
  }

  MutationSpec spec;
  spec.cls = cls;
  spec.site = static_cast<std::size_t>(*args.site);
  spec.new_k = args.new_k;
  spec.new_control = args.new_control;
  spec.new_target = args.new_target;
  spec.symbol = args.symbol;
  spec.new_phase_target = args.new_phase_target;
  spec.qubit = args.qubit;

  Circuit mutant;
  try {
    mutant = mutate(*circuit, spec);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    list_sites(std::cerr);
    return kExitInput;
  }
  const int rc = write_or_fail(args.out_path, serialize_circuit(mutant), args.force);
  if (rc == kExitPass) {
    std::cout << "wrote mutant " << spec.describe() << " to " << args.out_path
              << "\n";
  }
  return rc;
}

int cmd_bench(const BenchArgs& args) {
  BenchOptions opts;
  opts.n = args.n;
  try {
    opts.phases = parse_int_list(args.phases);
    opts.error_class = mutation_class_from_string(args.error_class);
  } catch (const std::exception& e) {
    return input_error(e.what());
  }
  if (opts.phases.empty()) return input_error("--phases needs at least one count");
  for (int p : opts.phases) {
    if (p <= 64) continue;
    if (!args.allow_large) {
      return input_error("phase count " + std::to_string(p) +
                         " exceeds the desk-scale ceiling of 64; pass "
                         "--allow-large to run it anyway (expect long runtimes)");
    }
    std::cerr << "warning: phase count " << p
              << " is beyond the desk-scale ceiling; this may take a while\n";
  }
  if (args.engine == "smt") {
    opts.engine = Engine::Smt;
    opts.solver_cmd = resolve_solver(args.solver_cmd);
  } else if (args.engine != "internal") {
    return input_error("--engine must be internal or smt");
  }
  opts.row_timeout_s = args.row_timeout_s;
  opts.parallel = args.parallel;

  BenchReport report;
  try {
    report = run_bench(opts);
  } catch (const std::invalid_argument& e) {
    return input_error(e.what());
  }
  if (!args.report_path.empty()) {
    if (!write_file(args.report_path, bench_to_json(report))) {
      return input_error("cannot write '" + args.report_path + "'");
    }
  }
  std::cout << bench_to_table(report);
  return kExitPass;
}

int cmd_export_smt(const ExportSmtArgs& args) {
  int exit_code = kExitPass;
  auto circuit = load_circuit(args.circuit_path, exit_code);
  if (!circuit) return exit_code;

  std::vector<PropertyId> ids;
  if (args.property == "all") {
    ids = {PropertyId::P1Superposition, PropertyId::P2Iqft,
           PropertyId::P3Measurement, PropertyId::P4Phase};
  } else if (args.property == "p1") {
    ids = {PropertyId::P1Superposition};
  } else if (args.property == "p2") {
    ids = {PropertyId::P2Iqft};
  } else if (args.property == "p3") {
    ids = {PropertyId::P3Measurement};
  } else if (args.property == "p4") {
    ids = {PropertyId::P4Phase};
  } else {
    return input_error("--property must be one of p1, p2, p3, p4, all");
  }

  for (PropertyId id : ids) {
    std::string path = args.out_path;
    if (ids.size() > 1) {
      const std::filesystem::path base(args.out_path);
      std::filesystem::path stem = base;
      stem.replace_extension();
      const int num = static_cast<int>(id) + 1;
      path = stem.string() + ".p" + std::to_string(num) +
             (base.has_extension() ? base.extension().string() : ".smt2");
    }
    std::string script;
    try {
      script = emit_smtlib(*circuit, id);
    } catch (const std::invalid_argument& e) {
      return input_error(e.what());
    }
    if (!write_file(path, script)) {
      return input_error("cannot write '" + path + "'");
    }
    std::cout << "wrote " << to_string(id) << " to " << path << "\n";
  }
  return kExitPass;
}

}  // namespace qpecheck
