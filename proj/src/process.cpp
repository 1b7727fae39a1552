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

#include "process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

extern char** environ;

namespace passgi {

namespace {

constexpr std::size_t kMaxCapturedOutput = 64 * 1024;

using Clock = std::chrono::steady_clock;

class Pipe {
 public:
  Pipe() {
    if (::pipe2(fds_, O_CLOEXEC) != 0) fds_[0] = fds_[1] = -1;
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  Pipe(const Pipe&) = delete;
  Pipe& operator=(const Pipe&) = delete;

  bool ok() const { return fds_[0] >= 0; }
  int read_end() const { return fds_[0]; }
  int write_end() const { return fds_[1]; }
  void close_read() {
    if (fds_[0] >= 0) ::close(fds_[0]);
    fds_[0] = -1;
  }
  void close_write() {
    if (fds_[1] >= 0) ::close(fds_[1]);
    fds_[1] = -1;
  }

 private:
  int fds_[2] = {-1, -1};
};

void append_capped(std::string& out, const char* data, std::size_t n) {
  if (out.size() >= kMaxCapturedOutput) return;
  out.append(data, std::min(n, kMaxCapturedOutput - out.size()));
}

void record_status(ProcessResult& result, int status) {
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.term_signal = WTERMSIG(status);
  }
}

}  // namespace

std::string ProcessResult::describe() const {
  if (!spawned) return "spawn failed: " + spawn_error;
  if (timed_out) return "timed out after " + std::to_string(seconds) + " s";
  if (term_signal != 0) return "killed by signal " + std::to_string(term_signal);
  return "exit code " + std::to_string(exit_code);
}

ProcessResult run_process(const std::vector<std::string>& argv, double timeout_seconds,
                          const std::filesystem::path& workdir) {
  ProcessResult result;
  if (argv.empty()) {
    result.spawn_error = "empty command";
    return result;
  }

  Pipe pipe;
  if (!pipe.ok()) {
    result.spawn_error = std::strerror(errno);
    return result;
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_adddup2(&actions, pipe.write_end(), STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, pipe.write_end(), STDERR_FILENO);
  if (!workdir.empty()) posix_spawn_file_actions_addchdir_np(&actions, workdir.c_str());

  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::vector<char*> cargv;
  cargv.reserve(argv.size() + 1);
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  const auto start = Clock::now();
  pid_t pid = -1;
  const int rc = posix_spawnp(&pid, cargv[0], &actions, &attr, cargv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  pipe.close_write();
  if (rc != 0) {
    result.spawn_error = argv[0] + ": " + std::strerror(rc);
    return result;
  }
  result.spawned = true;

  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(timeout_seconds));
  bool reaped = false;
  bool pipe_open = true;
  char buf[4096];

  while (!reaped) {
    const auto now = Clock::now();
    if (now >= deadline) break;
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() + 1;

    if (pipe_open) {
      pollfd pfd{pipe.read_end(), POLLIN, 0};
      const int wait_ms = static_cast<int>(std::min<long long>(remaining, 5));
      if (::poll(&pfd, 1, wait_ms) > 0) {
        const ssize_t n = ::read(pipe.read_end(), buf, sizeof buf);
        if (n > 0) {
          append_capped(result.output, buf, static_cast<std::size_t>(n));
        } else if (n == 0 || errno != EINTR) {
          pipe_open = false;
        }
      }
    } else {
      std::this_thread::sleep_for(std::chrono::microseconds(200));
    }

    int status = 0;
    const pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) {
      result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
      record_status(result, status);
      reaped = true;
    }
  }

  if (!reaped) {
    ::kill(-pid, SIGKILL);
    int status = 0;
    ::waitpid(pid, &status, 0);
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    result.timed_out = true;
    record_status(result, status);
  }

  // Drain whatever the child wrote just before exiting.
  if (pipe_open) {
    ::fcntl(pipe.read_end(), F_SETFL, O_NONBLOCK);
    ssize_t n;
    while ((n = ::read(pipe.read_end(), buf, sizeof buf)) > 0) {
      append_capped(result.output, buf, static_cast<std::size_t>(n));
    }
  }
  return result;
}

TimedRun time_execution(const std::filesystem::path& executable, const std::vector<std::string>& args,
                        double timeout_seconds, const std::filesystem::path& workdir) {
  std::vector<std::string> argv;
  argv.reserve(args.size() + 1);
  argv.push_back(executable.string());
  argv.insert(argv.end(), args.begin(), args.end());

  const auto proc = run_process(argv, timeout_seconds, workdir);
  TimedRun run;
  run.seconds = proc.seconds;
  run.output = proc.output;
  if (proc.timed_out) {
    run.status = RunStatus::kTimeout;
    run.diagnostics = proc.describe();
  } else if (!proc.succeeded()) {
    run.status = RunStatus::kRunError;
    run.diagnostics = proc.describe() + "\n" + proc.output;
  } else {
    run.status = RunStatus::kOk;
  }
  return run;
}

}  // namespace passgi
