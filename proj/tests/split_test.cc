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

#include <cmath>
#include <set>
#include <sstream>

#include "drskit/metrics.h"
#include "drskit/util.h"
#include "gtest/gtest.h"
#include "support/oracles.h"
#include "support/synthetic.h"

namespace drskit {
namespace {

std::vector<Document> EqualLengthDocs(size_t n) {
  std::vector<Document> docs;
  for (size_t i = 0; i < n; ++i) {
    Document d;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "d%04zu", i);
    d.id = buf;
    d.lang = "en";
    d.text = std::string("abcde").substr(0, 4) + static_cast<char>('a' + i % 26);
    d.tokens = {d.text};
    docs.push_back(d);
  }
  return docs;
}

TEST(EditDistance, Known) {
  EXPECT_EQ(EditDistance("kitten", "sitting"), 3u);
  EXPECT_EQ(EditDistance("", "abc"), 3u);
  EXPECT_EQ(EditDistance("abc", "abc"), 0u);
  EXPECT_EQ(EditDistance("ÄÖ", "AÖ"), 1u);  // code points, not bytes
}

TEST(EditDistance, MatchesOracle) {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string a, b;
    size_t la = rng.Uniform(12), lb = rng.Uniform(12);
    for (size_t i = 0; i < la; ++i) a.push_back(U'a' + rng.Uniform(4));
    for (size_t i = 0; i < lb; ++i) b.push_back(U'a' + rng.Uniform(4));
    size_t expect = testing::EditDistanceOracle(a, b);
    EXPECT_EQ(EditDistance(a, b), expect);
    EXPECT_EQ(EditDistance(b, a), expect);
  }
}

TEST(Ratio, ParseAndDefaults) {
  EXPECT_EQ(ParseRatio("8:1:1"), (SplitRatio{8, 1, 1}));
  EXPECT_EQ(ParseRatio("4:3:3").ToString(), "4:3:3");
  EXPECT_THROW(ParseRatio("8:1"), Error);
  EXPECT_THROW(ParseRatio("8:x:1"), Error);
  EXPECT_THROW(ParseRatio("0:0:0"), Error);
  EXPECT_EQ(DefaultRatio("en"), (SplitRatio{8, 1, 1}));
  EXPECT_EQ(DefaultRatio("de"), (SplitRatio{4, 3, 3}));
}

TEST(Policy, RatioMustSumToGroupSize) {
  SplitPolicy p;
  p.ratio = {4, 3, 3};
  EXPECT_NO_THROW(ValidatePolicy(p));
  p.ratio = {8, 1, 2};
  EXPECT_THROW(ValidatePolicy(p), Error);
  p.group_size = 0;
  EXPECT_THROW(ValidatePolicy(p), Error);
}

TEST(Apportion, LargestRemainder) {
  EXPECT_EQ(Apportion(1, {8, 1, 1}), (std::array<size_t, 3>{1, 0, 0}));
  EXPECT_EQ(Apportion(1000, {8, 1, 1}), (std::array<size_t, 3>{800, 100, 100}));
  EXPECT_EQ(Apportion(7, {4, 3, 3}), (std::array<size_t, 3>{3, 2, 2}));
  EXPECT_EQ(Apportion(7, {8, 1, 1}), (std::array<size_t, 3>{5, 1, 1}));
  for (size_t n = 0; n < 50; ++n) {
    auto c = Apportion(n, {8, 1, 1});
    EXPECT_EQ(c[0] + c[1] + c[2], n);
  }
}

TEST(SystematicSplit, HundredDocs) {
  auto docs = EqualLengthDocs(100);
  SplitAssignment a = SystematicSplit(docs, SplitPolicy{});
  EXPECT_EQ(a.Counts(), (std::array<size_t, 3>{80, 10, 10}));
}

TEST(SystematicSplit, SingleDocGoesToTrain) {
  auto docs = EqualLengthDocs(1);
  EXPECT_EQ(SystematicSplit(docs, SplitPolicy{}).Counts(), (std::array<size_t, 3>{1, 0, 0}));
  SplitPolicy p;
  p.tail = TailPolicy::kLargestRemainder;
  EXPECT_EQ(SystematicSplit(docs, p).Counts(), (std::array<size_t, 3>{1, 0, 0}));
}

TEST(SystematicSplit, EmptyCorpus) {
  EXPECT_TRUE(SystematicSplit(std::vector<Document>{}, SplitPolicy{}).entries.empty());
}

TEST(SystematicSplit, TailPolicies) {
  auto docs = testing::RandomCorpus(107, 4, "en");
  SplitPolicy p;
  EXPECT_EQ(SystematicSplit(docs, p).Counts(), (std::array<size_t, 3>{87, 10, 10}));
  p.tail = TailPolicy::kLargestRemainder;
  EXPECT_EQ(SystematicSplit(docs, p).Counts(), (std::array<size_t, 3>{85, 11, 11}));
}

TEST(SystematicSplit, PartitionAndDeterminism) {
  auto docs = testing::RandomCorpus(1000, 9, "en");
  SplitPolicy p;
  p.seed = 42;
  SplitAssignment a = SystematicSplit(docs, p);
  ASSERT_EQ(a.entries.size(), docs.size());
  std::set<std::string> ids;
  for (size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(a.entries[i].first, docs[i].id);
    ids.insert(a.entries[i].first);
  }
  EXPECT_EQ(ids.size(), docs.size());
  EXPECT_EQ(a.Counts(), (std::array<size_t, 3>{800, 100, 100}));
  SplitAssignment b = SystematicSplit(docs, p);
  EXPECT_EQ(a.entries, b.entries);
  p.workers = 3;
  EXPECT_EQ(SystematicSplit(docs, p).entries, a.entries);
}

TEST(SystematicSplit, TrainTakesMostCentralMembers) {
  // Within one group, the odd-one-out has the largest distance sum.
  std::vector<Document> docs;
  for (int i = 0; i < 10; ++i) {
    Document d;
    d.id = "x" + std::to_string(i);
    d.lang = "en";
    d.text = i == 7 ? "zzzzzzzz" : "aaaaaaa" + std::string(1, static_cast<char>('a' + i));
    d.tokens = {d.text};
    docs.push_back(d);
  }
  SplitAssignment a = SystematicSplit(docs, SplitPolicy{});
  EXPECT_NE(a.AsMap().at("x7"), SplitName::kTrain);
  SplitPolicy desc;
  desc.order = GroupOrder::kDescending;
  EXPECT_EQ(SystematicSplit(docs, desc).AsMap().at("x7"), SplitName::kTrain);
}

TEST(SystematicSplit, LengthBalance) {
  auto docs = testing::RandomCorpus(2000, 5, "en");
  SplitAssignment a = SystematicSplit(docs, SplitPolicy{});
  auto map = a.AsMap();
  std::vector<const Document*> parts[3];
  for (const auto& d : docs) parts[static_cast<size_t>(map.at(d.id))].push_back(&d);
  double mean[3];
  for (int s = 0; s < 3; ++s) mean[s] = ComputeCorpusStats(parts[s]).avg_char_length;
  EXPECT_LT(std::abs(mean[1] - mean[0]) / mean[0], 0.05);
  EXPECT_LT(std::abs(mean[2] - mean[0]) / mean[0], 0.05);
}

double MeanTestOverlap(std::span<const Document> docs, const SplitAssignment& a) {
  auto map = a.AsMap();
  std::vector<Document> train, test;
  for (const auto& d : docs) {
    SplitName s = map.at(d.id);
    if (s == SplitName::kTrain) train.push_back(d);
    if (s == SplitName::kTest) test.push_back(d);
  }
  return ComputeOverlapReport(train, test).mean;
}

TEST(SystematicSplit, LessLeakageThanRandom) {
  auto docs = testing::LeakyCorpus(1000, 200, 3);
  double sys = MeanTestOverlap(docs, SystematicSplit(docs, SplitPolicy{}));
  double rnd = MeanTestOverlap(docs, RandomSplit(docs, {8, 1, 1}, 0));
  EXPECT_LT(sys, rnd);
}

TEST(RandomSplit, CountsAndSeeds) {
  auto docs = testing::RandomCorpus(1000, 2, "en");
  SplitAssignment a = RandomSplit(docs, {8, 1, 1}, 1);
  EXPECT_EQ(a.Counts(), (std::array<size_t, 3>{800, 100, 100}));
  EXPECT_EQ(RandomSplit(docs, {8, 1, 1}, 1).entries, a.entries);
  EXPECT_NE(RandomSplit(docs, {8, 1, 1}, 2).entries, a.entries);
  EXPECT_THROW(RandomSplit(docs, {0, 0, 0}, 1), Error);
}

TEST(AssignmentFile, RoundTrip) {
  auto docs = testing::RandomCorpus(35, 1, "en");
  SplitPolicy p;
  p.seed = 7;
  p.tail = TailPolicy::kLargestRemainder;
  SplitAssignment a = SystematicSplit(docs, p);
  std::ostringstream out;
  std::vector<std::string> extra = {"digest=abc"};
  WriteAssignment(a, out, extra);
  std::istringstream in(out.str());
  SplitAssignment b = ReadAssignment(in);
  EXPECT_EQ(b.entries, a.entries);
  EXPECT_EQ(b.policy.seed, 7u);
  EXPECT_EQ(b.policy.tail, TailPolicy::kLargestRemainder);
}

TEST(AssignmentFile, Errors) {
  std::istringstream dup("a\ttrain\na\ttest\n");
  EXPECT_THROW(ReadAssignment(dup), DataError);
  std::istringstream bad("a\tvalidation\n");
  EXPECT_THROW(ReadAssignment(bad), DataError);
}

}  // namespace
}  // namespace drskit
