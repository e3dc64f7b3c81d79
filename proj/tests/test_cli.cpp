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

#include <algorithm>

#include "qpecheck/circuit.hpp"
#include "schema_check.hpp"
#include "test_util.hpp"

using namespace qpecheck;
using testutil::read_file;
using testutil::run_cli;
using testutil::TempDir;
using testutil::write_file;

#ifndef QPECHECK_SCHEMA_PATH
#define QPECHECK_SCHEMA_PATH "docs/report.schema.json"
#endif

namespace {

nlohmann::json schema() {
  return nlohmann::json::parse(read_file(QPECHECK_SCHEMA_PATH));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate round-trips and refuses to overwrite") {
  TempDir dir;
  const std::string path = dir.file("qpe31.qc");
  CHECK(run_cli("generate -n 3 -p 1 -o " + path) == 0);
  CHECK(parse_circuit(read_file(path)) == generate_qpe(3, 1));

  std::string out;
  CHECK(run_cli("generate -n 3 -p 1 -o " + path, &out) == 2);
  CHECK(out.find("--force") != std::string::npos);
  CHECK(run_cli("generate -n 2 -p 1 --force -o " + path) == 0);
  CHECK(parse_circuit(read_file(path)) == generate_qpe(2, 1));
}

TEST_CASE("generate validates sizes") {
  TempDir dir;
  std::string out;
  CHECK(run_cli("generate -n 0 -p 1 -o " + dir.file("x.qc"), &out) != 0);
  CHECK(run_cli("generate -n 31 -p 1 -o " + dir.file("y.qc"), &out) != 0);
}

TEST_CASE("generate handles a wide phase register") {
  TempDir dir;
  const std::string path = dir.file("wide.qc");
  CHECK(run_cli("generate -n 6 -p 64 -o " + path) == 0);
  const Circuit c = parse_circuit(read_file(path));
  CHECK(c.p == 64);
  CHECK(c.ops.size() == 6u + 63u + 6u + 15u + 6u);
}

TEST_CASE("verify honors a manual p2 block") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  REQUIRE(run_cli("generate -n 2 -p 1 -o " + good) == 0);
  // The detected block of qpe(2,1) is ops 5..8.
  CHECK(run_cli("verify " + good + " --p2-block 5:8") == 0);
  std::string out;
  CHECK(run_cli("verify " + good + " --p2-block 0:8", &out) == 2);
  CHECK(out.find("p2 block") != std::string::npos);
}

TEST_CASE("verify exit codes follow the contract") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  REQUIRE(run_cli("generate -n 3 -p 1 -o " + good) == 0);

  std::string out;
  CHECK(run_cli("verify " + good, &out) == 0);
  CHECK(out.find("result: PASS") != std::string::npos);

  const std::string bad = dir.file("bad.qc");
  REQUIRE(run_cli("mutate " + good + " --class CU_WRONG_CTRL --site 3 "
                  "--new-control 2 -o " + bad) == 0);
  CHECK(run_cli("verify " + bad, &out) == 1);
  CHECK(out.find("P4_PHASE") != std::string::npos);
  CHECK(out.find("result: FAIL") != std::string::npos);

  const std::string garbage = dir.file("garbage.qc");
  write_file(garbage, "qpe n=1 p=1\nwat P1\n");
  CHECK(run_cli("verify " + garbage, &out) == 2);
  CHECK(out.find("line 2") != std::string::npos);

  CHECK(run_cli("verify " + good + " --engine smt --solver no-such-solver-xyz",
                &out) == 3);
  CHECK(out.find("no-such-solver-xyz") != std::string::npos);
}

TEST_CASE("verify reports validate against the shipped schema") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  const std::string report = dir.file("report.json");
  REQUIRE(run_cli("generate -n 2 -p 1 -o " + good) == 0);
  REQUIRE(run_cli("verify " + good + " --report " + report) == 0);
  const auto doc = nlohmann::json::parse(read_file(report));
  CHECK(schemacheck::validate_document(doc, schema()) == "");

  // A failing report (with counterexample) must validate too.
  const std::string bad = dir.file("bad.qc");
  REQUIRE(run_cli("mutate " + good + " --class H_DROP --site 0 -o " + bad) == 0);
  REQUIRE(run_cli("verify " + bad + " --report " + report) == 1);
  const auto failing = nlohmann::json::parse(read_file(report));
  CHECK(schemacheck::validate_document(failing, schema()) == "");
  CHECK(failing["pass"] == false);
}

TEST_CASE("verify reports are byte-identical modulo timing") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  REQUIRE(run_cli("generate -n 3 -p 1 -o " + good) == 0);
  const std::string r1 = dir.file("r1.json");
  const std::string r2 = dir.file("r2.json");
  REQUIRE(run_cli("verify " + good + " --report " + r1) == 0);
  REQUIRE(run_cli("verify " + good + " --report " + r2) == 0);
  CHECK(testutil::normalize_report(read_file(r1)) ==
        testutil::normalize_report(read_file(r2)));
}

TEST_CASE("verify can dump the abstract trace") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  const std::string trace = dir.file("trace.json");
  REQUIRE(run_cli("generate -n 2 -p 1 -o " + good) == 0);
  REQUIRE(run_cli("verify " + good + " --dump-trace " + trace) == 0);
  const auto doc = nlohmann::json::parse(read_file(trace));
  CHECK(doc.is_array());
  CHECK(doc.size() > 0);
  CHECK(doc[0].contains("qubit"));
}

TEST_CASE("mutate lists sites when none is given") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  REQUIRE(run_cli("generate -n 2 -p 1 -o " + good) == 0);
  std::string out;
  CHECK(run_cli("mutate " + good + " --class CRK_DROP", &out) == 0);
  CHECK(out.find("applicable sites") != std::string::npos);
  CHECK(out.find("crkdag") != std::string::npos);
}

TEST_CASE("mutate rejects an inapplicable site and lists alternatives") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  REQUIRE(run_cli("generate -n 2 -p 1 -o " + good) == 0);
  std::string out;
  CHECK(run_cli("mutate " + good + " --class CRK_DROP --site 0 -o " +
                dir.file("m.qc"), &out) == 2);
  CHECK(out.find("not a crkdag") != std::string::npos);
  CHECK(out.find("applicable sites") != std::string::npos);
}

TEST_CASE("mutants fail verification per the class-property map") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  REQUIRE(run_cli("generate -n 3 -p 1 -o " + good) == 0);
  const std::string mut = dir.file("mut.qc");
  const std::string report = dir.file("rep.json");
  REQUIRE(run_cli("mutate " + good + " --class CU_DROP --site 4 -o " + mut) == 0);
  CHECK(run_cli("verify " + mut + " --report " + report) == 1);
  const auto doc = nlohmann::json::parse(read_file(report));
  for (const auto& prop : doc["properties"]) {
    if (prop["id"] == "P4_PHASE") {
      CHECK(prop["status"] == "FAIL");
    } else {
      CHECK(prop["status"] == "PASS");
    }
  }
}

TEST_CASE("export-smt writes well-formed scripts") {
  TempDir dir;
  const std::string good = dir.file("good.qc");
  REQUIRE(run_cli("generate -n 3 -p 1 -o " + good) == 0);

  const std::string single = dir.file("p2.smt2");
  CHECK(run_cli("export-smt " + good + " --property p2 -o " + single) == 0);
  const std::string script = read_file(single);
  CHECK(script.rfind("(set-logic QF_BV)\n", 0) == 0);

  const std::string multi = dir.file("all.smt2");
  CHECK(run_cli("export-smt " + good + " --property all -o " + multi) == 0);
  for (int i = 1; i <= 4; ++i) {
    const std::string path = dir.file("all.p" + std::to_string(i) + ".smt2");
    CHECK(std::filesystem::exists(path));
  }
}

TEST_CASE("bench produces the table and a schema-conforming report") {
  TempDir dir;
  const std::string report = dir.file("bench.json");
  std::string out;
  CHECK(run_cli("bench -n 3 --phases 1,2 --report " + report, &out) == 0);
  CHECK(out.find("Phase Qubits") != std::string::npos);
  CHECK(out.find("P4_PHASE-FAIL") != std::string::npos);

  const auto doc = nlohmann::json::parse(read_file(report));
  CHECK(schemacheck::validate_document(doc, schema()) == "");
  REQUIRE(doc["rows"].size() == 2);
  for (const auto& row : doc["rows"]) {
    CHECK(row["correct_pass"] == true);
    CHECK(row["error_failing"] == nlohmann::json::array({"P4_PHASE"}));
  }
}

TEST_CASE("bench verdict pattern is stable across runs") {
  TempDir dir;
  const std::string r1 = dir.file("b1.json");
  const std::string r2 = dir.file("b2.json");
  REQUIRE(run_cli("bench -n 4 --phases 2,4 --report " + r1) == 0);
  REQUIRE(run_cli("bench -n 4 --phases 2,4 --report " + r2) == 0);
  auto verdicts = [](const std::string& path) {
    nlohmann::json doc = nlohmann::json::parse(read_file(path));
    nlohmann::json trimmed = nlohmann::json::array();
    for (const auto& row : doc["rows"]) {
      trimmed.push_back({{"p", row["phase_qubits"]},
                         {"correct", row["correct_pass"]},
                         {"error", row["error_failing"]}});
    }
    return trimmed.dump();
  };
  CHECK(verdicts(r1) == verdicts(r2));
}

TEST_CASE("bench guards the desk-scale ceiling") {
  TempDir dir;
  std::string out;
  CHECK(run_cli("bench -n 2 --phases 128", &out) == 2);
  CHECK(out.find("--allow-large") != std::string::npos);
}

TEST_CASE("bench row times keep up with the phase count") {
  // Cost grows with p, so times at doubled p may not drop below 80% of the
  // previous row (jitter allowance). Smooth over three runs.
  TempDir dir;
  std::vector<std::vector<double>> samples;
  for (int rep = 0; rep < 3; ++rep) {
    const std::string path = dir.file("bench" + std::to_string(rep) + ".json");
    REQUIRE(run_cli("bench -n 6 --phases 8,16,32,64 --report " + path) == 0);
    const auto doc = nlohmann::json::parse(read_file(path));
    std::vector<double> times;
    for (const auto& row : doc["rows"]) times.push_back(row["correct_time_s"]);
    samples.push_back(times);
  }
  std::vector<double> best(samples[0].size(), 1e100);
  for (const auto& run : samples) {
    for (std::size_t i = 0; i < run.size(); ++i) best[i] = std::min(best[i], run[i]);
  }
  for (std::size_t i = 1; i < best.size(); ++i) {
    CHECK(best[i] >= best[i - 1] * 0.8);
  }
}

}  // TEST_SUITE
