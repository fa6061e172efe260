// Copyright 2026 The drskit Authors.
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

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <thread>
#include <unordered_map>

#include "drskit/plausibility.h"
#include "json.hpp"

namespace drskit {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string Clip(const std::string& frame) {
  return frame.size() > 200 ? frame.substr(0, 200) + "..." : frame;
}

int RemainingMs(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

}  // namespace

ExternalScorer::ExternalScorer(const std::string& command,
                               std::chrono::milliseconds timeout, size_t batch_size)
    : command_(command), timeout_(timeout), batch_size_(batch_size == 0 ? 1 : batch_size) {
  // A dead scorer must surface as an error, not a signal.
  ::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2], out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw ScorerError("pipe: " + std::string(strerror(errno)));
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw ScorerError("pipe: " + std::string(strerror(errno)));
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    throw ScorerError("fork: " + std::string(strerror(errno)));
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  pid_ = pid;
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  ::fcntl(to_child_, F_SETFL, ::fcntl(to_child_, F_GETFL) | O_NONBLOCK);

  try {
    WriteAll("{\"hello\": 1}\n");
    std::string frame = ReadFrame();
    json hello = json::parse(frame, nullptr, false);
    if (!hello.is_object() || hello.size() != 1 || !hello.contains("hello") ||
        hello["hello"] != 1) {
      throw ScorerError("scorer handshake failed, got frame: " + Clip(frame));
    }
  } catch (...) {
    Shutdown();
    throw;
  }
}

ExternalScorer::~ExternalScorer() { Shutdown(); }

void ExternalScorer::Shutdown() {
  if (to_child_ >= 0) ::close(to_child_);
  to_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 100; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        reaped = true;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    if (!reaped) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
    pid_ = -1;
  }
  if (from_child_ >= 0) ::close(from_child_);
  from_child_ = -1;
}

void ExternalScorer::WriteAll(const std::string& data) {
  auto deadline = Clock::now() + timeout_;
  size_t done = 0;
  while (done < data.size()) {
    // Keep draining the scorer's output so neither side blocks on a full pipe.
    pollfd fds[2] = {{to_child_, POLLOUT, 0}, {from_child_, POLLIN, 0}};
    int ready = ::poll(fds, 2, RemainingMs(deadline));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ScorerError("poll: " + std::string(strerror(errno)));
    }
    if (ready == 0) throw ScorerError("timed out writing to scorer");
    if (fds[1].revents & POLLIN) {
      char buf[4096];
      ssize_t n = ::read(from_child_, buf, sizeof(buf));
      if (n > 0) buffer_.append(buf, static_cast<size_t>(n));
    }
    if (fds[0].revents & (POLLERR | POLLHUP)) throw ScorerError("scorer closed its input");
    if (fds[0].revents & POLLOUT) {
      ssize_t n = ::write(to_child_, data.data() + done, data.size() - done);
      if (n < 0) {
        if (errno == EAGAIN || errno == EINTR) continue;
        throw ScorerError("write to scorer failed: " + std::string(strerror(errno)));
      }
      done += static_cast<size_t>(n);
    }
  }
}

std::string ExternalScorer::ReadFrame() {
  auto deadline = Clock::now() + timeout_;
  for (;;) {
    size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string frame = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!frame.empty() && frame.back() == '\r') frame.pop_back();
      if (frame.empty()) continue;
      return frame;
    }
    pollfd fd = {from_child_, POLLIN, 0};
    int ready = ::poll(&fd, 1, RemainingMs(deadline));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ScorerError("poll: " + std::string(strerror(errno)));
    }
    if (ready == 0) throw ScorerError("timed out waiting for scorer response");
    char buf[4096];
    ssize_t n = ::read(from_child_, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw ScorerError("read from scorer failed: " + std::string(strerror(errno)));
    }
    if (n == 0) {
      throw ScorerError("scorer exited before responding" +
                        (buffer_.empty() ? std::string() : ", partial frame: " + Clip(buffer_)));
    }
    buffer_.append(buf, static_cast<size_t>(n));
  }
}

std::vector<PllScore> ExternalScorer::ScoreBatch(
    std::span<const std::vector<std::string>> sentences, int /*workers*/) {
  for (const auto& s : sentences) {
    if (s.empty()) throw Error("cannot score an empty sentence");
  }
  if (to_child_ < 0) throw ScorerError("scorer is not running");
  std::vector<PllScore> out(sentences.size());
  for (size_t begin = 0; begin < sentences.size(); begin += batch_size_) {
    size_t end = std::min(sentences.size(), begin + batch_size_);
    std::unordered_map<int64_t, size_t> pending;
    std::string requests;
    for (size_t i = begin; i < end; ++i) {
      int64_t id = next_id_++;
      pending.emplace(id, i);
      json req = {{"id", id}, {"text", Detokenize(sentences[i])}};
      requests += req.dump();
      requests += '\n';
    }
    WriteAll(requests);
    while (!pending.empty()) {
      std::string frame = ReadFrame();
      json resp = json::parse(frame, nullptr, false);
      if (!resp.is_object() || !resp.contains("id") || !resp["id"].is_number_integer()) {
        throw ScorerError("malformed scorer frame: " + Clip(frame));
      }
      auto it = pending.find(resp["id"].get<int64_t>());
      if (it == pending.end()) {
        throw ScorerError("scorer answered an unknown id: " + Clip(frame));
      }
      if (resp.contains("error")) throw ScorerError("scorer reported an error: " + Clip(frame));
      if (!resp.contains("pll") || !resp["pll"].is_number() || !resp.contains("tokens") ||
          !resp["tokens"].is_number_integer() || resp["tokens"].get<int64_t>() <= 0) {
        throw ScorerError("malformed scorer frame: " + Clip(frame));
      }
      PllScore s;
      s.value = resp["pll"].get<double>();
      if (!std::isfinite(s.value)) throw ScorerError("non-finite score: " + Clip(frame));
      s.token_count = static_cast<size_t>(resp["tokens"].get<int64_t>());
      s.normalized = s.value / static_cast<double>(s.token_count);
      out[it->second] = s;
      pending.erase(it);
    }
  }
  return out;
}

std::string ExternalScorer::Provenance() const { return "external(" + command_ + ")"; }

}  // namespace drskit
