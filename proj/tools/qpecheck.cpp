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

#include <iostream>

#include <CLI11.hpp>

#include "qpecheck/cli.hpp"

int main(int argc, char** argv) {
  using namespace qpecheck;

  CLI::App app{
      "qpecheck: verifies quantum phase estimation circuits against a "
      "bit-vector qubit abstraction"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "emit a canonical QPE circuit");
  generate->add_option("-n", gen.n, "precision qubit count")->required();
  generate->add_option("-p", gen.p, "phase qubit count")->required();
  generate->add_option("-o,--out", gen.out_path, "output circuit file")->required();
  generate->add_flag("--force", gen.force, "overwrite an existing file");

  VerifyArgs ver;
  CLI::App* verify = app.add_subcommand("verify", "check the four correctness properties");
  verify->add_option("circuit", ver.circuit_path, "circuit file")->required();
  verify->add_option("--engine", ver.engine, "internal or smt")
      ->check(CLI::IsMember({"internal", "smt"}));
  verify->add_option("--solver", ver.solver_cmd,
                     "solver command template for --engine smt ('{}' = script "
                     "path; default $QPECHECK_SOLVER, then z3)");
  verify->add_option("--solver-timeout", ver.solver_timeout_s,
                     "per-property solver timeout in seconds");
  verify->add_option("--report", ver.report_path, "write the JSON report here");
  verify->add_option("--p2-block", ver.p2_block,
                     "manual iQFT block override as start:end op indices");
  verify->add_option("--dump-trace", ver.dump_trace_path,
                     "write the all-zeros abstract trace as JSON");

  MutateArgs mut;
  CLI::App* mutate = app.add_subcommand("mutate", "inject a single circuit error");
  mutate->add_option("circuit", mut.circuit_path, "circuit file")->required();
  mutate->add_option("--class", mut.mutation_class, "mutation class, e.g. CU_DROP")
      ->required();
  long site_val = -1;
  CLI::Option* site_opt =
      mutate->add_option("--site", site_val, "op index or insertion position");
  int v_k = 0, v_ctrl = 0, v_tgt = 0, v_sym = 0, v_ptgt = 0, v_qubit = 0;
  CLI::Option* o_k = mutate->add_option("--new-k", v_k, "replacement k (CRK_WRONG_K)");
  CLI::Option* o_ctrl = mutate->add_option(
      "--new-control", v_ctrl, "replacement control index (CRK/CU_WRONG_CTRL)");
  CLI::Option* o_tgt = mutate->add_option(
      "--new-target", v_tgt, "replacement precision target (CRK_WRONG_TGT)");
  CLI::Option* o_sym =
      mutate->add_option("--symbol", v_sym, "rotation symbol to redirect (CU_WRONG_TGT)");
  CLI::Option* o_ptgt = mutate->add_option(
      "--new-phase-target", v_ptgt, "replacement phase target (CU_WRONG_TGT)");
  CLI::Option* o_qubit = mutate->add_option(
      "--qubit", v_qubit, "qubit index for inserted gates (H_PHASE_ADD, M_EARLY, M_PHASE)");
  mutate->add_option("-o,--out", mut.out_path, "output circuit file");
  mutate->add_flag("--force", mut.force, "overwrite an existing file");

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "phase-block scaling table (correct vs error circuit)");
  bench_cmd->add_option("-n", bench.n, "precision qubit count (default 6)");
  bench_cmd->add_option("--phases", bench.phases,
                        "comma-separated phase qubit counts (default 2,4,8,16,32,64)");
  bench_cmd->add_option("--engine", bench.engine, "internal or smt")
      ->check(CLI::IsMember({"internal", "smt"}));
  bench_cmd->add_option("--solver", bench.solver_cmd, "solver command for --engine smt");
  bench_cmd->add_option("--report", bench.report_path, "write the JSON table here");
  bench_cmd->add_option("--error-class", bench.error_class,
                        "mutation class for the error rows");
  bench_cmd->add_flag("--allow-large", bench.allow_large,
                      "permit phase counts above 64");
  bench_cmd->add_option("--row-timeout", bench.row_timeout_s,
                        "per-row time budget in seconds (0 = none)");
  bench_cmd->add_flag("--parallel", bench.parallel, "run rows concurrently");

  ExportSmtArgs exp;
  CLI::App* export_cmd = app.add_subcommand("export-smt", "emit QF_BV SMT-LIB2 scripts");
  export_cmd->add_option("circuit", exp.circuit_path, "circuit file")->required();
  export_cmd->add_option("--property", exp.property, "p1, p2, p3, p4, or all");
  export_cmd->add_option("-o,--out", exp.out_path, "output file (all: one per property)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (generate->parsed()) return cmd_generate(gen);
  if (verify->parsed()) return cmd_verify(ver);
  if (mutate->parsed()) {
    if (site_opt->count() > 0) mut.site = site_val;
    if (o_k->count() > 0) mut.new_k = v_k;
    if (o_ctrl->count() > 0) mut.new_control = v_ctrl;
    if (o_tgt->count() > 0) mut.new_target = v_tgt;
    if (o_sym->count() > 0) mut.symbol = v_sym;
    if (o_ptgt->count() > 0) mut.new_phase_target = v_ptgt;
    if (o_qubit->count() > 0) mut.qubit = v_qubit;
    if (mut.site && mut.out_path.empty()) {
      std::cerr << "error: --out is required when --site is given\n";
      return kExitInput;
    }
    return cmd_mutate(mut);
  }
  if (bench_cmd->parsed()) return cmd_bench(bench);
  if (export_cmd->parsed()) return cmd_export_smt(exp);
  return kExitInput;
}
