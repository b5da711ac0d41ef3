#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

#include "formlab/error.hpp"
#include "internal.hpp"

namespace formlab::grader::detail {

namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() <= 0 ? 0 : int(left.count());
}

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

}  // namespace

CandidateProcess::CandidateProcess(std::filesystem::path program) : program_(std::move(program)) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(program_, ec) || ::access(program_.c_str(), X_OK) != 0)
    throw CandidateNotExecutable("candidate " + program_.string() + " is not an executable file");
  ignore_sigpipe();
}

CandidateProcess::~CandidateProcess() { stop(); }

void CandidateProcess::spawn() {
  int in[2], out[2];
  if (::pipe2(in, O_CLOEXEC) != 0) throw IoError(std::string("pipe: ") + std::strerror(errno));
  if (::pipe2(out, O_CLOEXEC) != 0) {
    ::close(in[0]);
    ::close(in[1]);
    throw IoError(std::string("pipe: ") + std::strerror(errno));
  }
  const std::string path = program_.string();
  const pid_t pid = ::fork();
  if (pid < 0) throw IoError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in[0], 0);
    ::dup2(out[1], 1);
    const int null = ::open("/dev/null", O_WRONLY);
    if (null >= 0) ::dup2(null, 2);
    char* argv[] = {const_cast<char*>(path.c_str()), nullptr};
    ::execv(path.c_str(), argv);
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(in[0]);
  ::close(out[1]);
  pid_ = pid;
  to_child_ = in[1];
  from_child_ = out[0];
  ::fcntl(to_child_, F_SETFL, ::fcntl(to_child_, F_GETFL) | O_NONBLOCK);
  pending_.clear();
}

void CandidateProcess::stop() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    ::kill(-pid_, SIGKILL);
    ::kill(pid_, SIGKILL);
    int status = 0;
    while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
    }
  }
  pid_ = -1;
  pending_.clear();
}

std::string CandidateProcess::exit_description() {
  int status = 0;
  pid_t done = 0;
  for (int i = 0; i < 50 && done == 0; ++i) {
    done = ::waitpid(pid_, &status, WNOHANG);
    if (done == 0) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  std::string what;
  if (done == pid_) {
    if (WIFEXITED(status))
      what = WEXITSTATUS(status) == 0
                 ? "the candidate exited without answering"
                 : "the candidate exited with status " + std::to_string(WEXITSTATUS(status));
    else if (WIFSIGNALED(status))
      what = "the candidate was killed by signal " + std::to_string(WTERMSIG(status));
    ::kill(-pid_, SIGKILL);
    pid_ = -1;
  } else {
    what = "the candidate closed its output without answering";
  }
  stop();
  return what;
}

CandidateProcess::Reply CandidateProcess::request(std::string_view line,
                                                  std::chrono::milliseconds timeout,
                                                  std::size_t max_bytes) {
  using Kind = Reply::Kind;
  if (pid_ < 0) spawn();
  const auto deadline = Clock::now() + timeout;

  std::string message(line);
  message += '\n';
  std::size_t sent = 0;
  while (sent < message.size()) {
    const ssize_t n = ::write(to_child_, message.data() + sent, message.size() - sent);
    if (n > 0) {
      sent += std::size_t(n);
      continue;
    }
    if (n < 0 && errno == EINTR) continue;
    if (n < 0 && errno == EAGAIN) {
      pollfd p{to_child_, POLLOUT, 0};
      if (::poll(&p, 1, remaining_ms(deadline)) == 0) {
        stop();
        return {Kind::Timeout, "no answer within the time limit"};
      }
      continue;
    }
    return {Kind::Crash, exit_description()};
  }

  char buf[4096];
  for (;;) {
    if (auto nl = pending_.find('\n'); nl != std::string::npos) {
      std::string answer = pending_.substr(0, nl);
      pending_.erase(0, nl + 1);
      if (!answer.empty() && answer.back() == '\r') answer.pop_back();
      return {Kind::Line, std::move(answer)};
    }
    if (pending_.size() > max_bytes) {
      stop();
      return {Kind::TooLong, "the answer exceeded " + std::to_string(max_bytes) + " bytes"};
    }
    pollfd p{from_child_, POLLIN, 0};
    const int ready = ::poll(&p, 1, remaining_ms(deadline));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) {
      stop();
      return {Kind::Timeout, "no answer within the time limit"};
    }
    const ssize_t n = ::read(from_child_, buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      if (!pending_.empty()) {
        std::string answer = std::move(pending_);
        exit_description();
        return {Kind::Line, std::move(answer)};
      }
      return {Kind::Crash, exit_description()};
    }
    pending_.append(buf, std::size_t(n));
  }
}

}  // namespace formlab::grader::detail
