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

#ifndef DRSKIT_SPLIT_H_
#define DRSKIT_SPLIT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "drskit/corpus.h"

namespace drskit {

enum class SplitName { kTrain, kDev, kTest };

const char* SplitNameString(SplitName split);

// train:dev:test shares of one group.
struct SplitRatio {
  int train = 8;
  int dev = 1;
  int test = 1;

  int sum() const { return train + dev + test; }
  std::string ToString() const;  // "8:1:1"
  bool operator==(const SplitRatio&) const = default;
};

SplitRatio ParseRatio(std::string_view text);  // "A:B:C"
SplitRatio DefaultRatio(std::string_view lang);  // en 8:1:1, otherwise 4:3:3

enum class TailPolicy {
  kTrain,            // a short last group goes to train entirely
  kLargestRemainder  // a short last group is apportioned by the ratio
};

// Order of the in-group dissimilarity re-sort.
enum class GroupOrder { kAscending, kDescending };

struct SplitPolicy {
  int group_size = 10;
  SplitRatio ratio;
  uint64_t seed = 0;
  TailPolicy tail = TailPolicy::kTrain;
  GroupOrder order = GroupOrder::kAscending;
  int workers = 1;
};

// Throws Error when the ratio does not sum to group_size.
void ValidatePolicy(const SplitPolicy& policy);

enum class SplitMethod { kSystematic, kRandom };

struct SplitAssignment {
  std::vector<std::pair<std::string, SplitName>> entries;  // corpus order
  SplitMethod method = SplitMethod::kSystematic;
  SplitPolicy policy;

  std::array<size_t, 3> Counts() const;
  std::unordered_map<std::string, SplitName> AsMap() const;
};

// Unit-cost Levenshtein distance over code points.
size_t EditDistance(std::string_view a, std::string_view b);
size_t EditDistance(const std::u32string& a, const std::u32string& b);

// Sort by character length (ties by id), cut into groups of group_size,
// re-sort each group by the sum of edit distances to the other members
// (ties by id); the first ratio.train go to train and the rest are
// shuffled into dev and test.
SplitAssignment SystematicSplit(std::span<const Document> docs, const SplitPolicy& policy);

// Seeded shuffle, then a contiguous cut at the ratio proportions.
SplitAssignment RandomSplit(std::span<const Document> docs, SplitRatio ratio, uint64_t seed);

// Largest-remainder apportionment of n items by ratio; ties favour train,
// then dev.
std::array<size_t, 3> Apportion(size_t n, SplitRatio ratio);

// `id<TAB>split` lines after `#` header lines.
void WriteAssignment(const SplitAssignment& assignment, std::ostream& out,
                     std::span<const std::string> extra_header = {});
SplitAssignment ReadAssignment(std::istream& in);
SplitAssignment LoadAssignment(const std::filesystem::path& path);

}  // namespace drskit

#endif  // DRSKIT_SPLIT_H_
