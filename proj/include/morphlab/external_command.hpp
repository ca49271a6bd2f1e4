// Copyright 2026 The Morphlab Authors
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

#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>

#include "morphlab/error.hpp"
#include "morphlab/text.hpp"

namespace morphlab {

/// Quotes `s` for /bin/sh.
inline std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

struct ExternalCommandOptions {
  std::chrono::milliseconds timeout{30'000};
  unsigned max_children = 4;
};

/// Runs a shell command per test case and reads a single real number from
/// its standard output. `{input}` in the template is replaced by the
/// shell-quoted input text. Concurrent children are capped; the adapter is
/// safe to call from several threads.
class ExternalCommand {
 public:
  using Options = ExternalCommandOptions;

  explicit ExternalCommand(std::string command_template, Options opts = Options())
      : template_(std::move(command_template)),
        opts_(opts),
        slots_(std::make_shared<Slots>(opts.max_children == 0 ? 1 : opts.max_children)) {}

  const std::string& command_template() const { return template_; }

  std::string render(std::string_view input) const {
    std::string out;
    const std::string_view key = "{input}";
    std::size_t pos = 0;
    for (;;) {
      auto hit = template_.find(key, pos);
      if (hit == std::string::npos) break;
      out.append(template_, pos, hit - pos);
      out += shell_quote(input);
      pos = hit + key.size();
    }
    out.append(template_, pos);
    return out;
  }

  /// Throws Error(kExecutionFailure) on a spawn failure, timeout, nonzero
  /// exit or output that is not exactly one number.
  double operator()(std::string_view input) const {
    auto command = render(input);
    SlotGuard guard(*slots_);
    auto out = run(command);
    auto value = text::parse_double(text::trim(out));
    if (!value) {
      throw Error(ErrorCode::kExecutionFailure,
                  "unparsable output '" + std::string(text::trim(out)) + "'");
    }
    return *value;
  }

 private:
  struct Slots {
    explicit Slots(unsigned n) : free(n) {}
    std::mutex mu;
    std::condition_variable cv;
    unsigned free;
  };

  struct SlotGuard {
    explicit SlotGuard(Slots& s) : slots(s) {
      std::unique_lock lock(slots.mu);
      slots.cv.wait(lock, [&] { return slots.free > 0; });
      --slots.free;
    }
    ~SlotGuard() {
      {
        std::lock_guard lock(slots.mu);
        ++slots.free;
      }
      slots.cv.notify_one();
    }
    Slots& slots;
  };

  std::string run(const std::string& command) const {
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0) {
      throw Error(ErrorCode::kExecutionFailure, "pipe failed");
    }
    pid_t pid = ::fork();
    if (pid < 0) {
      ::close(fds[0]);
      ::close(fds[1]);
      throw Error(ErrorCode::kExecutionFailure, "fork failed");
    }
    if (pid == 0) {
      ::dup2(fds[1], STDOUT_FILENO);
      int devnull = ::open("/dev/null", O_RDWR);
      if (devnull >= 0) {
        ::dup2(devnull, STDIN_FILENO);
        ::dup2(devnull, STDERR_FILENO);
      }
      ::setpgid(0, 0);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::setpgid(pid, pid);
    ::close(fds[1]);

    std::string out;
    const auto deadline = std::chrono::steady_clock::now() + opts_.timeout;
    bool timed_out = false;
    char buf[4096];
    for (;;) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) {
        timed_out = true;
        break;
      }
      pollfd p{fds[0], POLLIN, 0};
      int r = ::poll(&p, 1, static_cast<int>(left.count()));
      if (r < 0 && errno == EINTR) continue;
      if (r == 0) {
        timed_out = true;
        break;
      }
      ssize_t n = ::read(fds[0], buf, sizeof buf);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;
      out.append(buf, static_cast<std::size_t>(n));
    }
    ::close(fds[0]);
    int status = 0;
    // Output closed early: the child may still be running.
    while (!timed_out) {
      pid_t w = ::waitpid(pid, &status, WNOHANG);
      if (w == pid) break;
      if (w < 0 && errno != EINTR) break;
      if (std::chrono::steady_clock::now() >= deadline) {
        timed_out = true;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    if (timed_out) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
    }
    if (timed_out) {
      throw Error(ErrorCode::kExecutionFailure,
                  "timeout after " + std::to_string(opts_.timeout.count()) + " ms");
    }
    if (WIFSIGNALED(status)) {
      throw Error(ErrorCode::kExecutionFailure,
                  "killed by signal " + std::to_string(WTERMSIG(status)));
    }
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      throw Error(ErrorCode::kExecutionFailure,
                  "exit status " + std::to_string(WEXITSTATUS(status)));
    }
    return out;
  }

  std::string template_;
  Options opts_;
  std::shared_ptr<Slots> slots_;
};

}  // namespace morphlab
