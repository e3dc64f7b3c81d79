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

#include "qpecheck/bench.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>

#include <json.hpp>

namespace qpecheck {

namespace {

std::optional<double> peak_rss_mb() {
  if (auto bytes = peak_rss_bytes()) {
    return static_cast<double>(*bytes) / (1024.0 * 1024.0);
  }
  return std::nullopt;
}

BenchRow run_row(const BenchOptions& opts, int p) {
  using clock = std::chrono::steady_clock;
  BenchRow row;
  row.phase_qubits = p;

  VerifyOptions vo;
  vo.engine = opts.engine;
  vo.solver_cmd = opts.solver_cmd;
  if (opts.row_timeout_s > 0) vo.time_budget_s = opts.row_timeout_s;

  const Circuit correct = generate_qpe(opts.n, p);
  auto t0 = clock::now();
  const VerificationReport rep_correct = verify_all(correct, vo);
  row.correct_time_s = std::chrono::duration<double>(clock::now() - t0).count();
  row.correct_pass = rep_correct.pass;
  row.correct_mem_mb = peak_rss_mb();

  const auto mutants = enumerate_mutants(correct, {opts.error_class});
  if (mutants.empty()) {
    throw std::invalid_argument("error class " + to_string(opts.error_class) +
                                " is not applicable to qpe(n=" +
                                std::to_string(opts.n) + ", p=" + std::to_string(p) + ")");
  }
  t0 = clock::now();
  const VerificationReport rep_error = verify_all(mutants.front().second, vo);
  row.error_time_s = std::chrono::duration<double>(clock::now() - t0).count();
  row.error_mem_mb = peak_rss_mb();
  for (const PropertyResult& res : rep_error.properties) {
    if (res.status == PropStatus::Fail) row.error_failing.push_back(to_string(res.id));
    if (res.status == PropStatus::Skipped) row.timed_out = true;
  }
  for (const PropertyResult& res : rep_correct.properties) {
    if (res.status == PropStatus::Skipped) row.timed_out = true;
  }
  return row;
}

}  // namespace

BenchReport run_bench(const BenchOptions& opts) {
  if (opts.n < 2) {
    throw std::invalid_argument("bench needs n >= 2 for the injected control error");
  }
  std::vector<int> phases = opts.phases;
  std::sort(phases.begin(), phases.end());
  for (int p : phases) {
    if (p < 1) throw std::invalid_argument("phase counts must be >= 1");
  }

  BenchReport report;
  report.n = opts.n;
  report.engine = opts.engine;
  report.error_class = to_string(opts.error_class);

  if (opts.parallel) {
    std::vector<std::future<BenchRow>> jobs;
    jobs.reserve(phases.size());
    for (int p : phases) {
      jobs.push_back(std::async(std::launch::async,
                                [&opts, p] { return run_row(opts, p); }));
    }
    for (auto& job : jobs) report.rows.push_back(job.get());
  } else {
    for (int p : phases) report.rows.push_back(run_row(opts, p));
  }
  return report;
}

std::string bench_to_json(const BenchReport& report) {
  using nlohmann::json;
  json rows = json::array();
  for (const BenchRow& row : report.rows) {
    json r = {{"phase_qubits", row.phase_qubits},
              {"correct_time_s", row.correct_time_s},
              {"correct_pass", row.correct_pass},
              {"error_time_s", row.error_time_s},
              {"error_failing", row.error_failing},
              {"timed_out", row.timed_out}};
    if (row.correct_mem_mb) r["correct_mem_mb"] = *row.correct_mem_mb;
    if (row.error_mem_mb) r["error_mem_mb"] = *row.error_mem_mb;
    rows.push_back(std::move(r));
  }
  json doc = {{"n", report.n},
              {"engine", to_string(report.engine)},
              {"error_class", report.error_class},
              {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::string bench_to_table(const BenchReport& report) {
  std::ostringstream out;
  auto cell = [&](const std::string& text, int width) {
    out << text;
    for (int i = static_cast<int>(text.size()); i < width; ++i) out << ' ';
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  auto mem = [&](const std::optional<double>& v) {
    return v ? num(*v) : std::string("n/a");
  };

  cell("Phase Qubits", 14);
  cell("Correct Time(s)", 17);
  cell("Correct Mem(MB)", 17);
  cell("Error Time(s)", 15);
  cell("Error Mem(MB)", 15);
  cell("Correct", 9);
  out << "Error\n";
  for (const BenchRow& row : report.rows) {
    cell(std::to_string(row.phase_qubits), 14);
    cell(num(row.correct_time_s), 17);
    cell(mem(row.correct_mem_mb), 17);
    cell(num(row.error_time_s), 15);
    cell(mem(row.error_mem_mb), 15);
    cell(row.correct_pass ? "PASS" : "FAIL", 9);
    if (row.error_failing.empty()) {
      out << (row.timed_out ? "timeout" : "no-fail");
    } else {
      for (std::size_t i = 0; i < row.error_failing.size(); ++i) {
        if (i > 0) out << ",";
        out << row.error_failing[i] << "-FAIL";
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace qpecheck
