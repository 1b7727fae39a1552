// Copyright 2026 The passgi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PASSGI_PROCESS_HPP_
#define PASSGI_PROCESS_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace passgi {

struct ProcessResult {
  bool spawned = false;
  bool timed_out = false;
  int exit_code = -1;    // valid when the process exited normally
  int term_signal = 0;   // nonzero when killed by a signal
  double seconds = 0.0;  // wall clock, spawn to reap
  std::string output;    // interleaved stdout and stderr, truncated
  std::string spawn_error;

  bool succeeded() const { return spawned && !timed_out && term_signal == 0 && exit_code == 0; }
  std::string describe() const;
};

// Spawns argv[0] (PATH lookup) in its own process group, captures its output
// and kills the whole group once timeout_seconds elapse.
ProcessResult run_process(const std::vector<std::string>& argv, double timeout_seconds,
                          const std::filesystem::path& workdir = {});

enum class RunStatus { kOk, kTimeout, kRunError };

struct TimedRun {
  RunStatus status = RunStatus::kRunError;
  double seconds = 0.0;
  std::string output;
  std::string diagnostics;
};

// Wall-clock duration of one execution of executable with args.
TimedRun time_execution(const std::filesystem::path& executable, const std::vector<std::string>& args,
                        double timeout_seconds, const std::filesystem::path& workdir = {});

}  // namespace passgi

#endif  // PASSGI_PROCESS_HPP_
