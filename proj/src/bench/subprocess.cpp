#include "sdoe/bench/subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>
#include <utility>

namespace sdoe {

namespace {

using Clock = std::chrono::steady_clock;

long ms_until(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                        deadline - Clock::now())
                        .count();
  return left < 0 ? 0 : left;
}

// A dead child turns writes into SIGPIPE; we want EPIPE instead.
void ignore_sigpipe_once() {
  static const bool done = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

}  // namespace

SubprocessObjective::SubprocessObjective(SubprocessSpec spec)
    : Objective("subprocess", "subprocess:" + spec.command, spec.dim),
      spec_(std::move(spec)) {
  if (spec_.timeout_ms <= 0)
    throw ContractError("subprocess timeout must be positive");
  ignore_sigpipe_once();
  spawn();
}

SubprocessObjective::~SubprocessObjective() { teardown(); }

void SubprocessObjective::spawn() {
  int to_pipe[2];    // parent writes queries
  int from_pipe[2];  // parent reads replies
  if (pipe(to_pipe) != 0)
    throw EvalError(std::string("pipe failed: ") + std::strerror(errno));
  if (pipe(from_pipe) != 0) {
    close(to_pipe[0]);
    close(to_pipe[1]);
    throw EvalError(std::string("pipe failed: ") + std::strerror(errno));
  }

  const pid_t pid = fork();
  if (pid < 0) {
    close(to_pipe[0]); close(to_pipe[1]);
    close(from_pipe[0]); close(from_pipe[1]);
    throw EvalError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    dup2(to_pipe[0], STDIN_FILENO);
    dup2(from_pipe[1], STDOUT_FILENO);
    close(to_pipe[0]); close(to_pipe[1]);
    close(from_pipe[0]); close(from_pipe[1]);
    execl("/bin/sh", "sh", "-c", spec_.command.c_str(),
          static_cast<char*>(nullptr));
    std::perror("exec failed");
    _exit(127);
  }
  close(to_pipe[0]);
  close(from_pipe[1]);
  pid_ = pid;
  to_child_ = to_pipe[1];
  from_child_ = from_pipe[0];
}

bool SubprocessObjective::child_alive() const {
  if (pid_ < 0) return false;
  return waitpid(pid_, nullptr, WNOHANG) == 0;
}

void SubprocessObjective::teardown() noexcept {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ < 0) return;
  // Closing stdin usually ends a line-server child; give it a moment, then
  // escalate.
  for (int i = 0; i < 20; ++i) {
    if (waitpid(pid_, nullptr, WNOHANG) != 0) {
      pid_ = -1;
      return;
    }
    usleep(10 * 1000);
  }
  kill(pid_, SIGTERM);
  for (int i = 0; i < 20; ++i) {
    if (waitpid(pid_, nullptr, WNOHANG) != 0) {
      pid_ = -1;
      return;
    }
    usleep(10 * 1000);
  }
  kill(pid_, SIGKILL);
  waitpid(pid_, nullptr, 0);
  pid_ = -1;
}

std::string SubprocessObjective::read_reply_line() {
  const auto deadline =
      Clock::now() + std::chrono::milliseconds(spec_.timeout_ms);
  for (;;) {
    const size_t nl = rx_.find('\n');
    if (nl != std::string::npos) {
      std::string line = rx_.substr(0, nl);
      rx_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    struct pollfd pfd = {from_child_, POLLIN, 0};
    const int rc = poll(&pfd, 1, static_cast<int>(ms_until(deadline)));
    if (rc == 0)
      throw EvalError("timeout waiting for objective reply after " +
                          std::to_string(spec_.timeout_ms) + " ms",
                      rx_);
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw EvalError(std::string("poll failed: ") + std::strerror(errno), rx_);
    }
    char buf[512];
    const ssize_t got = read(from_child_, buf, sizeof buf);
    if (got < 0) {
      if (errno == EINTR) continue;
      throw EvalError(std::string("read failed: ") + std::strerror(errno), rx_);
    }
    if (got == 0)
      throw EvalError("objective process closed its output", rx_);
    rx_.append(buf, static_cast<size_t>(got));
  }
}

double SubprocessObjective::evaluate_impl(const Vec& x) {
  if (pid_ < 0) throw EvalError("objective process is not running");

  std::string line;
  char buf[40];
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", x[j]);
    if (j > 0) line += ' ';
    line += buf;
  }
  line += '\n';
  size_t off = 0;
  while (off < line.size()) {
    const ssize_t put = write(to_child_, line.data() + off, line.size() - off);
    if (put < 0) {
      if (errno == EINTR) continue;
      throw EvalError(std::string("write to objective process failed: ") +
                      std::strerror(errno));
    }
    off += static_cast<size_t>(put);
  }

  const std::string reply = read_reply_line();
  const char* begin = reply.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin)
    throw EvalError("unparseable objective reply", reply);
  while (end && (*end == ' ' || *end == '\t')) ++end;
  if (end && *end != '\0')
    throw EvalError("trailing junk in objective reply", reply);
  if (!std::isfinite(v))
    throw EvalError("non-finite objective reply", reply);
  return v;
}

}  // namespace sdoe
