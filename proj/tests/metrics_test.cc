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

#include "drskit/metrics.h"

#include <cmath>
#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "support/oracles.h"
#include "support/synthetic.h"

namespace drskit {
namespace {

using Tokens = std::vector<std::string>;

TEST(WordOverlap, ChocolatePair) {
  Tokens a = {"I", "like", "chocolate", "ice", "cream", "!"};
  Tokens b = {"I", "like", "chocolate", "ice", "cream", "."};
  EXPECT_DOUBLE_EQ(WordOverlap(a, b), 5.0 / 7.0);
}

TEST(WordOverlap, IdentityDisjointEmpty) {
  Tokens a = {"a", "b", "b"};
  EXPECT_DOUBLE_EQ(WordOverlap(a, a), 1.0);
  EXPECT_DOUBLE_EQ(WordOverlap(a, Tokens{"c"}), 0.0);
  EXPECT_DOUBLE_EQ(WordOverlap(Tokens{}, Tokens{}), 1.0);
  EXPECT_DOUBLE_EQ(WordOverlap(a, Tokens{}), 0.0);
}

TEST(WordOverlap, CaseSensitiveAndSymmetric) {
  Tokens a = {"The", "dog"}, b = {"the", "dog", "runs"};
  EXPECT_DOUBLE_EQ(WordOverlap(a, b), 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(WordOverlap(a, b), WordOverlap(b, a));
}

Document Doc(std::string id, Tokens tokens) {
  Document d;
  d.id = std::move(id);
  d.lang = "en";
  d.tokens = std::move(tokens);
  d.text = "x";
  return d;
}

TEST(OverlapReport, MatchesBruteForce) {
  std::vector<Document> train = {Doc("t1", {"a", "b", "c"}), Doc("t2", {"c", "d"}),
                                 Doc("t3", {"e", "f", "g", "h"})};
  std::vector<Document> test = {Doc("s1", {"a", "b", "d"}), Doc("s2", {"h", "x"})};
  OverlapReport r = ComputeOverlapReport(train, test);
  ASSERT_EQ(r.per_doc.size(), 2u);
  for (size_t i = 0; i < test.size(); ++i) {
    double best = -1;
    std::string arg;
    for (const Document& t : train) {
      double w = WordOverlap(test[i].tokens, t.tokens);
      if (w > best) {
        best = w;
        arg = t.id;
      }
    }
    EXPECT_DOUBLE_EQ(r.per_doc[i].max_overlap, best);
    EXPECT_EQ(r.per_doc[i].train_id, arg);
  }
  EXPECT_DOUBLE_EQ(r.mean, (0.5 + 0.2) / 2);
  size_t total = 0;
  for (size_t c : r.histogram) total += c;
  EXPECT_EQ(total, 2u);
  EXPECT_EQ(r.histogram.size(), OverlapReport::kBins);
}

TEST(OverlapReport, SubsetAndDisjoint) {
  std::vector<Document> train = {Doc("t1", {"a", "b"}), Doc("t2", {"c"})};
  OverlapReport same = ComputeOverlapReport(train, train);
  for (const auto& e : same.per_doc) EXPECT_DOUBLE_EQ(e.max_overlap, 1.0);
  EXPECT_EQ(same.histogram.back(), 2u);
  std::vector<Document> other = {Doc("s1", {"z"})};
  OverlapReport none = ComputeOverlapReport(train, other);
  EXPECT_DOUBLE_EQ(none.per_doc[0].max_overlap, 0.0);
  EXPECT_EQ(none.histogram.front(), 1u);
}

TEST(OverlapReport, WorkersDoNotChangeResult) {
  auto docs = testing::LeakyCorpus(300, 30, 1);
  std::span<const Document> all(docs);
  OverlapReport a = ComputeOverlapReport(all.subspan(0, 200), all.subspan(200), 1);
  OverlapReport b = ComputeOverlapReport(all.subspan(0, 200), all.subspan(200), 3);
  ASSERT_EQ(a.per_doc.size(), b.per_doc.size());
  for (size_t i = 0; i < a.per_doc.size(); ++i) {
    EXPECT_EQ(a.per_doc[i].max_overlap, b.per_doc[i].max_overlap);
    EXPECT_EQ(a.per_doc[i].train_id, b.per_doc[i].train_id);
  }
  EXPECT_EQ(a.histogram, b.histogram);
}

TEST(OverlapBin, Edges) {
  EXPECT_EQ(OverlapBin(0.0), 0u);
  EXPECT_EQ(OverlapBin(0.049), 0u);
  EXPECT_EQ(OverlapBin(0.05), 1u);
  EXPECT_EQ(OverlapBin(1.0), 19u);
}

TEST(Histogram, EmptyAndFull) {
  OverlapReport empty;
  empty.histogram.assign(OverlapReport::kBins, 0);
  EXPECT_EQ(FormatHistogram(empty), "bin_lo\tbin_hi\tcount\n");
  std::vector<Document> train = {Doc("t1", {"a", "b"})};
  OverlapReport r = ComputeOverlapReport(train, train);
  std::string text = FormatHistogram(r);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 21);
  auto path = std::filesystem::temp_directory_path() / "drskit_hist_test.tsv";
  std::vector<std::string> header = {"note=x"};
  EmitHistogram(r, path, header);
  EXPECT_EQ(ReadFile(path), "# note=x\n" + text);
  std::filesystem::remove(path);
}

TEST(ErrRate, Counts) {
  std::vector<std::string> outs(100, "dog.n.01\n");
  EXPECT_DOUBLE_EQ(ErrRate(outs), 0.0);
  outs[10] = "dog.n.01 Theme +3";
  outs[55] = "not sbn at all";
  EXPECT_DOUBLE_EQ(ErrRate(outs), 2.0);
  EXPECT_DOUBLE_EQ(ErrRate(std::vector<std::string>{}), 0.0);
  EXPECT_DOUBLE_EQ(ErrRate(std::vector<std::string>{"", "x"}), 100.0);
}

TEST(Smatch, IdentityIsOne) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    TripleSet t = ToTriples(ParseSbn(testing::RandomSbnText(rng, 8)));
    MatchResult r = SmatchF1(t, t);
    EXPECT_DOUBLE_EQ(r.f1, 1.0);
  }
}

TEST(Smatch, EmptyPredIsZero) {
  TripleSet gold = ToTriples(ParseSbn("dog.n.01"));
  MatchResult r = SmatchF1(TripleSet{}, gold);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_EQ(r.gold_triples, 2u);
}

TEST(Smatch, HandExample) {
  // Gold: Mary called us. Pred: Mary called her, wrong constant on x3.
  TripleSet gold = ToTriples(ParseSbn(
      "female.n.02 Name \"Mary\"\ncall.v.03 Agent -1 Time +1 Co-Agent +2\n"
      "time.n.08 TPR now\nperson.n.01 Sub speaker\n"));
  TripleSet pred = ToTriples(ParseSbn(
      "female.n.02 Name \"Mary\"\ncall.v.03 Agent -1 Time +1 Co-Agent +2\n"
      "time.n.08 TPR now\nperson.n.01 Sub hearer\n"));
  MatchResult r = SmatchF1(pred, gold);
  EXPECT_EQ(r.matched, 13u);
  EXPECT_NEAR(r.f1, 13.0 / 14.0, 1e-12);
}

TEST(Smatch, MatchesExhaustiveOracle) {
  Rng rng(99);
  for (int i = 0; i < 60; ++i) {
    TripleSet a = ToTriples(ParseSbn(testing::RandomSbnText(rng, 6)));
    TripleSet b = ToTriples(ParseSbn(testing::RandomSbnText(rng, 6)));
    size_t best = testing::ExhaustiveMatch(a, b);
    MatchResult r = SmatchF1(a, b);
    MatchResult oracle = ScoreFromCounts(best, a.size(), b.size());
    EXPECT_NEAR(r.f1, oracle.f1, 1e-9) << "pair " << i;
  }
}

TEST(Smatch, MonotoneInRestarts) {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    TripleSet a = ToTriples(ParseSbn(testing::RandomSbnText(rng, 12)));
    TripleSet b = ToTriples(ParseSbn(testing::RandomSbnText(rng, 12)));
    size_t prev = 0;
    for (int restarts = 1; restarts <= 8; ++restarts) {
      SmatchOptions o;
      o.restarts = restarts;
      size_t m = SmatchF1(a, b, o).matched;
      EXPECT_GE(m, prev);
      prev = m;
    }
  }
}

TEST(Smatch, MappingIsInjective) {
  Rng rng(8);
  TripleSet a = ToTriples(ParseSbn(testing::RandomSbnText(rng, 10)));
  TripleSet b = ToTriples(ParseSbn(testing::RandomSbnText(rng, 10)));
  MatchResult r = SmatchF1(a, b);
  std::set<std::string> seen;
  for (const auto& g : r.mapping) {
    if (!g.empty()) EXPECT_TRUE(seen.insert(g).second);
  }
  EXPECT_EQ(r.mapping.size(), r.pred_variables.size());
}

TEST(ScoreFromCounts, Basics) {
  MatchResult r = ScoreFromCounts(3, 4, 6);
  EXPECT_DOUBLE_EQ(r.precision, 0.75);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.f1, 0.6);
  EXPECT_EQ(ScoreFromCounts(0, 0, 0).f1, 0.0);
}

std::vector<Tokens> Split(const std::vector<std::string>& lines) {
  std::vector<Tokens> out;
  for (const auto& l : lines) {
    Tokens t;
    std::istringstream in(l);
    std::string w;
    while (in >> w) t.push_back(w);
    out.push_back(t);
  }
  return out;
}

TEST(Bleu, IdentityIsOne) {
  auto refs = Split({"the cat sat on the mat", "a dog barked loudly at night", "hi"});
  BleuOptions o;
  EXPECT_DOUBLE_EQ(CorpusBleu(refs, refs, o), 1.0);
}

TEST(Bleu, HandWorkedExample) {
  // the cat sat on the mat / the cat is on the mat:
  // p1 = 5/6, p2 = 3/5, p3 = 1/4, equal lengths.
  auto hyp = Split({"the cat sat on the mat"});
  auto ref = Split({"the cat is on the mat"});
  BleuStats s = CollectBleuStats(hyp, ref, 4);
  EXPECT_EQ(s.matches, (std::vector<size_t>{5, 3, 1, 0}));
  EXPECT_EQ(s.totals, (std::vector<size_t>{6, 5, 4, 3}));
  BleuOptions o;
  o.max_n = 3;
  EXPECT_NEAR(CorpusBleu(hyp, ref, o), 0.5, 1e-6);
  o.max_n = 4;
  EXPECT_EQ(CorpusBleu(hyp, ref, o), 0.0);
  o.smoothing = BleuSmoothing::kAddOne;
  EXPECT_NEAR(CorpusBleu(hyp, ref, o), std::pow(1.0 / 18.0, 0.25), 1e-6);
}

TEST(Bleu, BrevityPenaltyAndEffectiveOrder) {
  auto hyp = Split({"the cat"});
  auto ref = Split({"the cat sat"});
  EXPECT_NEAR(CorpusBleu(hyp, ref), std::exp(1.0 - 1.5), 1e-6);
}

TEST(Bleu, ZeroUnigramOverlap) {
  EXPECT_EQ(CorpusBleu(Split({"a b c"}), Split({"d e f"})), 0.0);
}

TEST(Bleu, Errors) {
  EXPECT_THROW(CorpusBleu(Split({"a"}), Split({"a", "b"})), Error);
  EXPECT_THROW(CorpusBleu(std::vector<Tokens>{}, std::vector<Tokens>{}), Error);
}

}  // namespace
}  // namespace drskit
