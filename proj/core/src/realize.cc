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

#include <algorithm>
#include <array>
#include <cctype>

#include "drskit/recombine.h"

namespace drskit {
namespace {

constexpr std::array<std::string_view, 13> kAttachLeft = {
    ".", ",", "!", "?", ";", ":", "...", ")", "]", "}", "%", "''", "’"};

constexpr std::array<std::string_view, 8> kClitics = {"'s", "'S", "n't", "N'T",
                                                      "'re", "'ve", "'ll", "'m"};

bool AttachesLeft(std::string_view tok) {
  if (std::find(kAttachLeft.begin(), kAttachLeft.end(), tok) != kAttachLeft.end()) {
    return true;
  }
  if (std::find(kClitics.begin(), kClitics.end(), tok) != kClitics.end()) return true;
  return tok == "'d" || tok == "'" || tok == "’s";
}

bool AttachesRight(std::string_view tok) {
  return tok == "(" || tok == "[" || tok == "{" || tok == "``" || tok == "$";
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string Detokenize(std::span<const std::string> tokens) {
  std::string out;
  bool quote_open = false;
  bool glue_next = false;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    bool space = i > 0 && !glue_next;
    glue_next = false;
    if (tok == "\"") {
      if (quote_open) {
        space = false;
      } else {
        glue_next = true;
      }
      quote_open = !quote_open;
    } else if (AttachesLeft(tok)) {
      space = false;
    }
    if (AttachesRight(tok)) glue_next = true;
    if (space) out += ' ';
    out += tok;
  }
  return out;
}

std::vector<std::string> TokenizeText(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view chunk = text.substr(start, i - start);
    if (chunk.empty()) continue;

    while (chunk.size() > 1 && std::string_view("\"([{").find(chunk.front()) !=
                                   std::string_view::npos) {
      out.emplace_back(1, chunk.front());
      chunk.remove_prefix(1);
    }
    std::vector<std::string> tail;
    while (chunk.size() > 1) {
      char c = chunk.back();
      if (std::string_view(",!?;:)]}\"").find(c) != std::string_view::npos) {
        tail.emplace_back(1, c);
        chunk.remove_suffix(1);
        continue;
      }
      // A final period splits off unless the word is an abbreviation
      // with inner periods (U.S.).
      if (c == '.' && chunk.substr(0, chunk.size() - 1).find('.') == std::string_view::npos) {
        tail.emplace_back(".");
        chunk.remove_suffix(1);
        continue;
      }
      break;
    }
    std::string_view clitic;
    for (std::string_view c : kClitics) {
      if (chunk.size() > c.size() && EndsWith(chunk, c)) {
        clitic = c;
        break;
      }
    }
    if (clitic.empty() && chunk.size() > 2 && EndsWith(chunk, "'d")) clitic = "'d";
    if (!clitic.empty()) {
      out.emplace_back(chunk.substr(0, chunk.size() - clitic.size()));
      out.emplace_back(clitic);
    } else if (!chunk.empty()) {
      out.emplace_back(chunk);
    }
    out.insert(out.end(), tail.rbegin(), tail.rend());
  }
  return out;
}

bool StartsUpper(std::string_view text) {
  return !text.empty() && text[0] >= 'A' && text[0] <= 'Z';
}

std::string RealizeText(const CcgTree& tree, bool capitalize) {
  std::vector<std::string> tokens = tree.Yield();
  std::string text = Detokenize(tokens);
  if (capitalize && !text.empty() && text[0] >= 'a' && text[0] <= 'z') {
    text[0] = static_cast<char>(text[0] - 'a' + 'A');
  }
  return text;
}

}  // namespace drskit
