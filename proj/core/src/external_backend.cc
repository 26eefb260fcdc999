/* Copyright 2026 The aurad Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aurad/external_backend.h"

#include <fcntl.h>
#include <pthread.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <nlohmann/json.hpp>
#include <sstream>

#include "aurad/error.h"
#include "aurad/png_io.h"

extern char** environ;

namespace fs = std::filesystem;

namespace aurad {
namespace {

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

std::string errno_text() { return std::strerror(errno); }

}  // namespace

CommandResult run_command(const std::string& command, const std::string& input) {
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw IoError("pipe: " + errno_text());
  Fd in_read(in_pipe[0]), in_write(in_pipe[1]);
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) throw IoError("pipe: " + errno_text());
  Fd out_read(out_pipe[0]), out_write(out_pipe[1]);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_read.get(), STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_write.get(), STDOUT_FILENO);

  const char* argv[] = {"/bin/sh", "-c", command.c_str(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, nullptr,
                             const_cast<char* const*>(argv), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw IoError("cannot start '" + command + "': " + std::strerror(rc));
  in_read.reset();
  out_write.reset();

  // Requests are small, so writing everything before reading cannot fill
  // the pipe. SIGPIPE is blocked for this thread so a child that exits
  // without reading shows up as EPIPE instead of killing the caller.
  sigset_t pipe_set;
  sigset_t old_set;
  sigemptyset(&pipe_set);
  sigaddset(&pipe_set, SIGPIPE);
  pthread_sigmask(SIG_BLOCK, &pipe_set, &old_set);
  bool broken = false;
  std::size_t written = 0;
  while (written < input.size()) {
    const ssize_t n = ::write(in_write.get(), input.data() + written,
                              input.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      broken = errno == EPIPE;
      break;
    }
    written += static_cast<std::size_t>(n);
  }
  in_write.reset();
  if (broken) {
    const timespec zero{0, 0};
    sigtimedwait(&pipe_set, nullptr, &zero);
  }
  pthread_sigmask(SIG_SETMASK, &old_set, nullptr);

  CommandResult result;
  char buf[4096];
  for (;;) {
    const ssize_t n = ::read(out_read.get(), buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    result.out.append(buf, static_cast<std::size_t>(n));
  }

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw IoError("waitpid: " + errno_text());
  }
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return result;
}

ExternalCommandTextToMask::ExternalCommandTextToMask(std::string command,
                                                     fs::path work_dir)
    : command_(std::move(command)), work_dir_(std::move(work_dir)) {
  if (command_.empty()) throw ValidationError("external backend command is empty");
}

std::vector<PathologyAnnotation> ExternalCommandTextToMask::generate(
    const PromptSpec& prompt, const OrganMap& organ, std::uint64_t seed) {
  const fs::path dir =
      work_dir_ / ("request_" + std::to_string(::getpid()) + "_" +
                   std::to_string(counter_++));
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  const fs::path organ_path = dir / "organ.png";
  save_organ_map(organ_path, organ);

  const nlohmann::json request = {{"prompt", prompt.raw_text()},
                                  {"organ", organ_path.string()},
                                  {"seed", seed},
                                  {"out_dir", dir.string()},
                                  {"width", organ.width()},
                                  {"height", organ.height()}};
  const CommandResult res = run_command(command_, request.dump() + "\n");
  if (res.exit_code != 0) {
    throw IoError("external backend exited with status " +
                  std::to_string(res.exit_code));
  }

  std::vector<PathologyAnnotation> out;
  std::istringstream lines(res.out);
  std::string line;
  while (std::getline(lines, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    fs::path p(line);
    if (p.is_relative()) p = dir / p;
    const auto disease = class_from_file_name(p.filename().string());
    if (!disease) {
      throw ValidationError("external backend returned '" + line +
                            "', which does not name a class");
    }
    out.push_back(load_pathology_mask(p, *disease, &organ));
  }
  fs::remove_all(dir, ec);
  return out;
}

}  // namespace aurad
