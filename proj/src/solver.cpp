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

#include "qpecheck/solver.hpp"

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace qpecheck {

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Unsat: return "UNSAT";
    case SolverStatus::Sat: return "SAT";
    case SolverStatus::Unknown: return "UNKNOWN";
    case SolverStatus::Unavailable: return "UNAVAILABLE";
  }
  return "?";
}

namespace {

std::vector<std::string> build_argv(const std::string& cmd, const std::string& path) {
  std::vector<std::string> argv;
  std::istringstream in(cmd);
  std::string tok;
  bool substituted = false;
  while (in >> tok) {
    if (tok == "{}") {
      argv.push_back(path);
      substituted = true;
    } else {
      argv.push_back(tok);
    }
  }
  if (!substituted) argv.push_back(path);
  return argv;
}

struct TempScript {
  std::filesystem::path path;

  explicit TempScript(const std::string& script) {
    auto dir = std::filesystem::temp_directory_path();
    path = dir / ("qpecheck_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter()++) + ".smt2");
    std::ofstream out(path);
    out << script;
  }
  ~TempScript() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }

  static unsigned& counter() {
    static unsigned c = 0;
    return c;
  }
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

SolverResult run_external_solver(const std::string& cmd, const std::string& script,
                                 double timeout_s) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  SolverResult result;
  if (trim(cmd).empty()) {
    result.status = SolverStatus::Unavailable;
    result.detail = "empty solver command";
    return result;
  }

  TempScript tmp(script);
  const std::vector<std::string> argv = build_argv(cmd, tmp.path.string());

  int pipe_fd[2];
  if (pipe(pipe_fd) != 0) {
    result.status = SolverStatus::Unavailable;
    result.detail = "pipe() failed";
    return result;
  }

  const pid_t pid = fork();
  if (pid < 0) {
    close(pipe_fd[0]);
    close(pipe_fd[1]);
    result.status = SolverStatus::Unavailable;
    result.detail = "fork() failed";
    return result;
  }
  if (pid == 0) {
    dup2(pipe_fd[1], STDOUT_FILENO);
    dup2(pipe_fd[1], STDERR_FILENO);
    close(pipe_fd[0]);
    close(pipe_fd[1]);
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }

  close(pipe_fd[1]);
  fcntl(pipe_fd[0], F_SETFL, O_NONBLOCK);

  std::string output;
  bool timed_out = false;
  int wstatus = 0;
  char buf[4096];
  for (;;) {
    ssize_t got;
    while ((got = read(pipe_fd[0], buf, sizeof buf)) > 0) {
      output.append(buf, static_cast<std::size_t>(got));
    }
    const pid_t done = waitpid(pid, &wstatus, WNOHANG);
    if (done == pid) break;
    if (elapsed() > timeout_s) {
      kill(pid, SIGKILL);
      waitpid(pid, &wstatus, 0);
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  ssize_t got;
  while ((got = read(pipe_fd[0], buf, sizeof buf)) > 0) {
    output.append(buf, static_cast<std::size_t>(got));
  }
  close(pipe_fd[0]);

  result.elapsed_s = elapsed();
  if (timed_out) {
    result.status = SolverStatus::Unknown;
    result.detail = "timeout after " + std::to_string(timeout_s) + " s";
    return result;
  }

  std::istringstream lines(output);
  std::string line;
  bool verdict_seen = false;
  std::ostringstream model;
  while (std::getline(lines, line)) {
    const std::string t = trim(line);
    if (!verdict_seen) {
      if (t == "unsat") {
        result.status = SolverStatus::Unsat;
        return result;
      }
      if (t == "sat") {
        result.status = SolverStatus::Sat;
        verdict_seen = true;
        continue;
      }
      if (t == "unknown") {
        result.status = SolverStatus::Unknown;
        result.detail = "solver reported unknown";
        return result;
      }
    } else {
      model << line << "\n";
    }
  }
  if (verdict_seen) {
    result.model_text = model.str();
    return result;
  }

  const int exit_code = WIFEXITED(wstatus) ? WEXITSTATUS(wstatus) : -1;
  if (exit_code == 127 || exit_code == 126) {
    result.status = SolverStatus::Unavailable;
    result.detail = "command not found: " + argv.front();
  } else {
    result.status = SolverStatus::Unknown;
    result.detail = "no sat/unsat/unknown in solver output (exit " +
                    std::to_string(exit_code) + ")";
  }
  return result;
}

std::map<std::string, int> parse_model_bits(const std::string& model_text) {
  std::map<std::string, int> bits;
  static const std::regex define_re(
      R"(\(define-fun\s+(b\d+)\s*\(\s*\)\s*\(\s*_\s+BitVec\s+1\s*\)\s*#b([01])\s*\))");
  static const std::regex pair_re(R"(\((b\d+)\s+#b([01])\))");
  for (const auto& re : {define_re, pair_re}) {
    for (std::sregex_iterator it(model_text.begin(), model_text.end(), re), end;
         it != end; ++it) {
      bits[(*it)[1].str()] = (*it)[2].str() == "1" ? 1 : 0;
    }
  }
  return bits;
}

}  // namespace qpecheck
