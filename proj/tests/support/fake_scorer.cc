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

// Stand-in scorer process for protocol tests.
//
//   fake_scorer [mode]
//
// Modes: echo (pll -1.0), length (pll = -0.1 * characters), bad-hello,
// unknown-id, error, die (exits after the handshake), mute (never answers).
// Pending requests are answered in reverse order once input goes quiet.

#include <poll.h>
#include <unistd.h>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

using json = nlohmann::json;

namespace {

int CountTokens(const std::string& text) {
  std::istringstream in(text);
  std::string w;
  int n = 0;
  while (in >> w) ++n;
  return n == 0 ? 1 : n;
}

bool ReadLine(std::string& buffer, std::string& line, int timeout_ms, bool& eof) {
  for (;;) {
    size_t nl = buffer.find('\n');
    if (nl != std::string::npos) {
      line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      return true;
    }
    pollfd fd = {STDIN_FILENO, POLLIN, 0};
    if (poll(&fd, 1, timeout_ms) <= 0) return false;
    char buf[4096];
    ssize_t n = read(STDIN_FILENO, buf, sizeof(buf));
    if (n <= 0) {
      eof = true;
      return false;
    }
    buffer.append(buf, static_cast<size_t>(n));
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::string mode = argc > 1 ? argv[1] : "echo";
  std::string buffer, line;
  bool eof = false;
  if (mode == "mute") {
    while (!eof) ReadLine(buffer, line, 1000, eof);
    return 0;
  }
  if (!ReadLine(buffer, line, 10000, eof)) return 1;
  if (mode == "bad-hello") {
    std::cout << "{\"hello\": 2}" << std::endl;
  } else {
    std::cout << "{\"hello\": 1}" << std::endl;
  }
  if (mode == "die") return 0;

  std::vector<json> pending;
  auto flush = [&] {
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) std::cout << it->dump() << "\n";
    std::cout.flush();
    pending.clear();
  };
  while (!eof) {
    if (!ReadLine(buffer, line, 20, eof)) {
      flush();
      if (eof) break;
      continue;
    }
    json req = json::parse(line, nullptr, false);
    if (!req.is_object() || !req.contains("id")) continue;
    long id = req["id"].get<long>();
    std::string text = req.value("text", "");
    json resp;
    if (mode == "unknown-id") {
      resp = {{"id", id + 100000}, {"pll", -1.0}, {"tokens", 1}};
    } else if (mode == "error") {
      resp = {{"id", id}, {"error", "model unavailable"}};
    } else if (mode == "length") {
      resp = {{"id", id}, {"pll", -0.1 * static_cast<double>(text.size())},
              {"tokens", CountTokens(text)}};
    } else {
      resp = {{"id", id}, {"pll", -1.0}, {"tokens", CountTokens(text)}};
    }
    pending.push_back(resp);
  }
  flush();
  return 0;
}
