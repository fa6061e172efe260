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

#include "drskit/split.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "drskit/util.h"

namespace drskit {

const char* SplitNameString(SplitName split) {
  switch (split) {
    case SplitName::kTrain: return "train";
    case SplitName::kDev: return "dev";
    case SplitName::kTest: return "test";
  }
  return "train";
}

std::string SplitRatio::ToString() const {
  return std::to_string(train) + ":" + std::to_string(dev) + ":" + std::to_string(test);
}

SplitRatio ParseRatio(std::string_view text) {
  SplitRatio r;
  int* parts[3] = {&r.train, &r.dev, &r.test};
  size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    size_t end = i < 2 ? text.find(':', pos) : text.size();
    if (end == std::string_view::npos) throw Error("ratio must look like A:B:C");
    std::string_view part = text.substr(pos, end - pos);
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) {
      throw Error("ratio must look like A:B:C");
    }
    *parts[i] = std::stoi(std::string(part));
    pos = end + 1;
  }
  if (r.sum() <= 0) throw Error("ratio must have a positive sum");
  return r;
}

SplitRatio DefaultRatio(std::string_view lang) {
  if (lang == "en") return {8, 1, 1};
  return {4, 3, 3};
}

void ValidatePolicy(const SplitPolicy& policy) {
  const SplitRatio& r = policy.ratio;
  if (policy.group_size <= 0) throw Error("group size must be positive");
  if (r.train < 0 || r.dev < 0 || r.test < 0) throw Error("ratio parts must be >= 0");
  if (r.sum() != policy.group_size) {
    throw Error("ratio " + r.ToString() + " does not sum to group size " +
                std::to_string(policy.group_size));
  }
}

std::array<size_t, 3> SplitAssignment::Counts() const {
  std::array<size_t, 3> counts{0, 0, 0};
  for (const auto& [id, split] : entries) ++counts[static_cast<size_t>(split)];
  return counts;
}

std::unordered_map<std::string, SplitName> SplitAssignment::AsMap() const {
  std::unordered_map<std::string, SplitName> map;
  map.reserve(entries.size());
  for (const auto& [id, split] : entries) map.emplace(id, split);
  return map;
}

size_t EditDistance(const std::u32string& a, const std::u32string& b) {
  const std::u32string& s = a.size() < b.size() ? b : a;
  const std::u32string& t = a.size() < b.size() ? a : b;
  std::vector<size_t> row(t.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (size_t i = 1; i <= s.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= t.size(); ++j) {
      size_t up = row[j];
      size_t cost = s[i - 1] == t[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[t.size()];
}

size_t EditDistance(std::string_view a, std::string_view b) {
  return EditDistance(DecodeUtf8(a), DecodeUtf8(b));
}

std::array<size_t, 3> Apportion(size_t n, SplitRatio ratio) {
  const int parts[3] = {ratio.train, ratio.dev, ratio.test};
  const size_t sum = static_cast<size_t>(ratio.sum());
  std::array<size_t, 3> counts{};
  std::array<size_t, 3> remainder{};
  size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    counts[i] = n * parts[i] / sum;
    remainder[i] = n * parts[i] % sum;
    assigned += counts[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return remainder[x] > remainder[y]; });
  for (size_t k = 0; assigned < n; ++k, ++assigned) ++counts[order[k % 3]];
  return counts;
}

namespace {

struct Item {
  const Document* doc;
  size_t length;
  std::u32string chars;
};

}  // namespace

SplitAssignment SystematicSplit(std::span<const Document> docs, const SplitPolicy& policy) {
  ValidatePolicy(policy);
  SplitAssignment result;
  result.method = SplitMethod::kSystematic;
  result.policy = policy;
  if (docs.empty()) return result;

  std::vector<Item> items;
  items.reserve(docs.size());
  for (const auto& d : docs) {
    std::u32string chars = DecodeUtf8(d.text);
    size_t len = chars.size();
    items.push_back({&d, len, std::move(chars)});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.doc->id < b.doc->id;
  });

  const size_t group_size = static_cast<size_t>(policy.group_size);
  const size_t groups = (items.size() + group_size - 1) / group_size;
  std::vector<std::vector<std::pair<const Document*, SplitName>>> placed(groups);

  ParallelFor(groups, policy.workers, [&](size_t g) {
    size_t begin = g * group_size;
    size_t end = std::min(items.size(), begin + group_size);
    size_t n = end - begin;

    std::vector<size_t> key(n, 0);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        size_t d = EditDistance(items[begin + i].chars, items[begin + j].chars);
        key[i] += d;
        key[j] += d;
      }
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (key[a] != key[b]) {
        return policy.order == GroupOrder::kAscending ? key[a] < key[b] : key[a] > key[b];
      }
      return items[begin + a].doc->id < items[begin + b].doc->id;
    });

    std::array<size_t, 3> counts;
    if (n == group_size) {
      counts = {static_cast<size_t>(policy.ratio.train), static_cast<size_t>(policy.ratio.dev),
                static_cast<size_t>(policy.ratio.test)};
    } else if (policy.tail == TailPolicy::kTrain) {
      counts = {n, 0, 0};
    } else {
      counts = Apportion(n, policy.ratio);
    }

    std::vector<std::pair<const Document*, SplitName>>& out = placed[g];
    for (size_t k = 0; k < counts[0]; ++k) {
      out.emplace_back(items[begin + order[k]].doc, SplitName::kTrain);
    }
    std::vector<size_t> rest(order.begin() + counts[0], order.end());
    Rng rng(DeriveSeed(policy.seed, "group", g));
    rng.Shuffle(rest);
    for (size_t k = 0; k < rest.size(); ++k) {
      out.emplace_back(items[begin + rest[k]].doc,
                       k < counts[1] ? SplitName::kDev : SplitName::kTest);
    }
  });

  std::unordered_map<const Document*, SplitName> by_doc;
  by_doc.reserve(docs.size());
  for (const auto& group : placed) {
    for (const auto& [doc, split] : group) by_doc.emplace(doc, split);
  }
  result.entries.reserve(docs.size());
  for (const auto& d : docs) result.entries.emplace_back(d.id, by_doc.at(&d));
  return result;
}

SplitAssignment RandomSplit(std::span<const Document> docs, SplitRatio ratio, uint64_t seed) {
  if (ratio.train < 0 || ratio.dev < 0 || ratio.test < 0 || ratio.sum() <= 0) {
    throw Error("invalid ratio " + ratio.ToString());
  }
  SplitAssignment result;
  result.method = SplitMethod::kRandom;
  result.policy.ratio = ratio;
  result.policy.group_size = ratio.sum();
  result.policy.seed = seed;

  std::vector<size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, "random-split"));
  rng.Shuffle(order);
  std::array<size_t, 3> counts = Apportion(docs.size(), ratio);

  std::vector<SplitName> split(docs.size());
  for (size_t k = 0; k < order.size(); ++k) {
    split[order[k]] = k < counts[0]               ? SplitName::kTrain
                      : k < counts[0] + counts[1] ? SplitName::kDev
                                                  : SplitName::kTest;
  }
  for (size_t i = 0; i < docs.size(); ++i) result.entries.emplace_back(docs[i].id, split[i]);
  return result;
}

void WriteAssignment(const SplitAssignment& a, std::ostream& out,
                     std::span<const std::string> extra_header) {
  out << "# method=" << (a.method == SplitMethod::kSystematic ? "systematic" : "random")
      << " seed=" << a.policy.seed << " ratio=" << a.policy.ratio.ToString()
      << " group_size=" << a.policy.group_size
      << " tail=" << (a.policy.tail == TailPolicy::kTrain ? "train" : "largest_remainder")
      << '\n';
  for (const auto& line : extra_header) out << "# " << line << '\n';
  for (const auto& [id, split] : a.entries) out << id << '\t' << SplitNameString(split) << '\n';
}

SplitAssignment ReadAssignment(std::istream& in) {
  SplitAssignment a;
  std::string line;
  size_t lineno = 0;
  std::unordered_map<std::string, bool> seen;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      // Only the first comment line carries the policy.
      if (header_seen) continue;
      header_seen = true;
      std::istringstream ss(line.substr(1));
      std::string kv;
      while (ss >> kv) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos) continue;
        std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        try {
          if (k == "method") a.method = v == "random" ? SplitMethod::kRandom : SplitMethod::kSystematic;
          if (k == "seed") a.policy.seed = std::stoull(v);
          if (k == "ratio") a.policy.ratio = ParseRatio(v);
          if (k == "group_size") a.policy.group_size = std::stoi(v);
          if (k == "tail") a.policy.tail = v == "train" ? TailPolicy::kTrain : TailPolicy::kLargestRemainder;
        } catch (const std::exception&) {
          throw DataError("assignment line " + std::to_string(lineno) + ": bad header " + kv);
        }
      }
      continue;
    }
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("assignment line " + std::to_string(lineno) + ": expected id<TAB>split");
    }
    std::string id = line.substr(0, tab);
    std::string name = line.substr(tab + 1);
    SplitName split;
    if (name == "train") {
      split = SplitName::kTrain;
    } else if (name == "dev") {
      split = SplitName::kDev;
    } else if (name == "test") {
      split = SplitName::kTest;
    } else {
      throw DataError("assignment line " + std::to_string(lineno) + ": unknown split " + name);
    }
    if (!seen.emplace(id, true).second) {
      throw DataError("assignment line " + std::to_string(lineno) + ": duplicate id " + id);
    }
    a.entries.emplace_back(std::move(id), split);
  }
  return a;
}

SplitAssignment LoadAssignment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open assignment: " + path.string());
  return ReadAssignment(in);
}

}  // namespace drskit
