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

#include <doctest.h>

#include <set>

#include "qpecheck/mutation.hpp"
#include "qpecheck/smtlib.hpp"
#include "qpecheck/solver.hpp"
#include "smt_eval.hpp"
#include "test_util.hpp"

using namespace qpecheck;

namespace {

constexpr PropertyId kProps[] = {PropertyId::P1Superposition, PropertyId::P2Iqft,
                                 PropertyId::P3Measurement, PropertyId::P4Phase};

bool balanced(const std::string& text) {
  int depth = 0;
  bool comment = false;
  for (char ch : text) {
    if (comment) {
      if (ch == '\n') comment = false;
      continue;
    }
    if (ch == ';') comment = true;
    if (ch == '(') ++depth;
    if (ch == ')' && --depth < 0) return false;
  }
  return depth == 0;
}

PropertyResult run_internal(const Circuit& c, PropertyId id) {
  switch (id) {
    case PropertyId::P1Superposition: return check_p1(c);
    case PropertyId::P2Iqft: return check_p2(c);
    case PropertyId::P3Measurement: return check_p3(c);
    case PropertyId::P4Phase: return check_p4(c);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("smtlib") {

TEST_CASE("exports are structurally well-formed") {
  for (const Circuit& c : {generate_qpe(2, 1), generate_qpe(3, 1)}) {
    for (PropertyId id : kProps) {
      const std::string script = emit_smtlib(c, id);
      CAPTURE(to_string(id));
      CHECK(script.rfind("(set-logic QF_BV)\n", 0) == 0);
      CHECK(balanced(script));
      CHECK(script.find("(check-sat)") != std::string::npos);
      CHECK(script.find("(get-model)") != std::string::npos);
      // Exactly n declared variables.
      std::size_t declares = 0, pos = 0;
      while ((pos = script.find("(declare-const", pos)) != std::string::npos) {
        ++declares;
        ++pos;
      }
      CHECK(declares == static_cast<std::size_t>(c.n));
    }
  }
}

TEST_CASE("correct circuits export unsat instances") {
  for (int n = 1; n <= 3; ++n) {
    const Circuit c = generate_qpe(n, 1);
    for (PropertyId id : kProps) {
      const auto script = smteval::Script::parse(emit_smtlib(c, id));
      CHECK(script.declared_count() == n);
      CHECK(!script.solve().sat);
    }
  }
}

TEST_CASE("evaluator verdicts match the internal engine on every mutant") {
  // Full n <= 3 corpus: correct circuits and all single mutants.
  const std::set<MutationClass> classes(all_mutation_classes().begin(),
                                        all_mutation_classes().end());
  for (const Circuit& base :
       {generate_qpe(1, 1), generate_qpe(2, 1), generate_qpe(2, 2)}) {
    for (const auto& [spec, mut] : enumerate_mutants(base, classes)) {
      for (PropertyId id : kProps) {
        CAPTURE(spec.describe());
        CAPTURE(to_string(id));
        const bool internal_pass = run_internal(mut, id).pass();
        const auto result = smteval::Script::parse(emit_smtlib(mut, id)).solve();
        CHECK(internal_pass == !result.sat);
      }
    }
  }
}

TEST_CASE("sat models reproduce the internal counterexample") {
  const Circuit base = generate_qpe(3, 1);
  MutationSpec spec;
  spec.cls = MutationClass::CrkWrongCtrl;
  spec.site = 11;  // k=2, c=P3, t=P2
  spec.new_control = 1;
  const Circuit mut = mutate(base, spec);

  const auto result = smteval::Script::parse(emit_smtlib(mut, PropertyId::P2Iqft)).solve();
  REQUIRE(result.sat);
  BasisAssignment a = BasisAssignment::zeros(3);
  for (int j = 1; j <= 3; ++j) {
    a.bits[static_cast<std::size_t>(j - 1)] =
        static_cast<std::uint8_t>(result.model.at("b" + std::to_string(j)));
  }
  CHECK(p2_violation(mut, detect_iqft_block(mut), a).has_value());
}

TEST_CASE("P2 export respects the block override error") {
  const Circuit c = generate_qpe(2, 1);
  CHECK_THROWS_AS(emit_smtlib(c, PropertyId::P2Iqft, OpRange{0, c.ops.size()}),
                  std::invalid_argument);
}

TEST_CASE("external solver protocol") {
  testutil::TempDir dir;
  const std::string script = "(set-logic QF_BV)\n(check-sat)\n";

  SUBCASE("missing binary is unavailable, not a crash") {
    const SolverResult res =
        run_external_solver("definitely-not-a-solver-binary", script, 5.0);
    CHECK(res.status == SolverStatus::Unavailable);
  }

  SUBCASE("empty command is unavailable") {
    CHECK(run_external_solver("  ", script, 5.0).status == SolverStatus::Unavailable);
  }

  SUBCASE("unsat line is parsed") {
    testutil::write_file(dir.file("unsat.sh"), "#!/bin/sh\necho unsat\n");
    std::filesystem::permissions(dir.file("unsat.sh"),
                                 std::filesystem::perms::owner_all);
    const SolverResult res = run_external_solver(dir.file("unsat.sh"), script, 5.0);
    CHECK(res.status == SolverStatus::Unsat);
  }

  SUBCASE("sat line captures the model text") {
    testutil::write_file(
        dir.file("sat.sh"),
        "#!/bin/sh\necho sat\necho '(model'\n"
        "echo '  (define-fun b1 () (_ BitVec 1) #b1)'\n"
        "echo '  (define-fun b2 () (_ BitVec 1) #b0)'\necho ')'\n");
    std::filesystem::permissions(dir.file("sat.sh"),
                                 std::filesystem::perms::owner_all);
    const SolverResult res = run_external_solver(dir.file("sat.sh"), script, 5.0);
    REQUIRE(res.status == SolverStatus::Sat);
    const auto bits = parse_model_bits(res.model_text);
    CHECK(bits.at("b1") == 1);
    CHECK(bits.at("b2") == 0);
  }

  SUBCASE("timeout is unknown with elapsed time") {
    testutil::write_file(dir.file("slow.sh"), "#!/bin/sh\nsleep 10\necho unsat\n");
    std::filesystem::permissions(dir.file("slow.sh"),
                                 std::filesystem::perms::owner_all);
    const SolverResult res = run_external_solver(dir.file("slow.sh"), script, 0.2);
    CHECK(res.status == SolverStatus::Unknown);
    CHECK(res.elapsed_s >= 0.2);
    CHECK(res.detail.find("timeout") != std::string::npos);
  }

  SUBCASE("gibberish output is unknown") {
    testutil::write_file(dir.file("noise.sh"), "#!/bin/sh\necho hello world\n");
    std::filesystem::permissions(dir.file("noise.sh"),
                                 std::filesystem::perms::owner_all);
    CHECK(run_external_solver(dir.file("noise.sh"), script, 5.0).status ==
          SolverStatus::Unknown);
  }

  SUBCASE("command template substitution reads the script file") {
    testutil::write_file(dir.file("cat.sh"),
                         "#!/bin/sh\ngrep -q 'set-logic QF_BV' \"$1\" && echo unsat\n");
    std::filesystem::permissions(dir.file("cat.sh"),
                                 std::filesystem::perms::owner_all);
    CHECK(run_external_solver(dir.file("cat.sh") + " {}", script, 5.0).status ==
          SolverStatus::Unsat);
  }
}

TEST_CASE("smt verify path falls back when the solver is missing") {
  VerifyOptions opts;
  opts.engine = Engine::Smt;
  opts.solver_cmd = "definitely-not-a-solver-binary";
  const VerificationReport report = verify_all(generate_qpe(2, 1), opts);
  CHECK(report.solver_unavailable);
  CHECK(report.engine == Engine::Internal);
  CHECK(report.pass);  // internal fallback still verifies
  REQUIRE(report.note.has_value());
  CHECK(report.note->find("definitely-not-a-solver-binary") != std::string::npos);
}

TEST_CASE("smt verify path consumes a conforming solver") {
  // A "solver" that defers to the evaluator-style verdict: unsat always,
  // which matches correct circuits.
  testutil::TempDir dir;
  testutil::write_file(dir.file("stub.sh"), "#!/bin/sh\necho unsat\n");
  std::filesystem::permissions(dir.file("stub.sh"),
                               std::filesystem::perms::owner_all);
  VerifyOptions opts;
  opts.engine = Engine::Smt;
  opts.solver_cmd = dir.file("stub.sh");
  const VerificationReport report = verify_all(generate_qpe(2, 1), opts);
  CHECK(report.engine == Engine::Smt);
  CHECK(report.pass);
  CHECK(!report.solver_unavailable);
}

#ifdef QPECHECK_EVAL_SOLVER
TEST_CASE("smt engine end to end against the evaluator solver") {
  VerifyOptions opts;
  opts.engine = Engine::Smt;
  opts.solver_cmd = QPECHECK_EVAL_SOLVER;

  const VerificationReport clean = verify_all(generate_qpe(2, 1), opts);
  CHECK(clean.engine == Engine::Smt);
  CHECK(clean.pass);

  // A wrong-control rotation: SMT finds the violation, the model replays to
  // the same counterexample the internal engine reports.
  const Circuit base = generate_qpe(3, 1);
  MutationSpec spec;
  spec.cls = MutationClass::CrkWrongCtrl;
  spec.site = 11;
  spec.new_control = 1;
  const Circuit mut = mutate(base, spec);
  const VerificationReport smt = verify_all(mut, opts);
  const VerificationReport internal = verify_all(mut);
  CHECK(!smt.pass);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(smt.properties[i].status == internal.properties[i].status);
    if (smt.properties[i].status == PropStatus::Fail) {
      REQUIRE(smt.properties[i].counterexample.has_value());
      const Counterexample& ce = *smt.properties[i].counterexample;
      CHECK(ce.expected != ce.actual);
      CHECK(p2_violation(mut, detect_iqft_block(mut), ce.assignment).has_value());
    }
  }
}
#endif

}  // TEST_SUITE
