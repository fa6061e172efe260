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

#ifndef DRSKIT_METRICS_H_
#define DRSKIT_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "drskit/corpus.h"
#include "drskit/sbn.h"

namespace drskit {

// Word overlap -------------------------------------------------------------

// |set(a) ∩ set(b)| / |set(a) ∪ set(b)|, case-sensitive; 1.0 when both
// are empty.
double WordOverlap(std::span<const std::string> a, std::span<const std::string> b);

struct OverlapEntry {
  std::string test_id;
  double max_overlap = 0;
  std::string train_id;  // first train document reaching the maximum
};

struct OverlapReport {
  static constexpr size_t kBins = 20;

  std::vector<OverlapEntry> per_doc;
  std::vector<size_t> histogram;  // kBins counts over [0, 1]
  double mean = 0;
};

// Histogram bin of an overlap rate; 1.0 falls in the last bin.
size_t OverlapBin(double rate, size_t bins = OverlapReport::kBins);

// For each test document, its maximum overlap against all of `train`.
OverlapReport ComputeOverlapReport(std::span<const Document* const> train,
                                   std::span<const Document* const> test, int workers = 1);
OverlapReport ComputeOverlapReport(std::span<const Document> train,
                                   std::span<const Document> test, int workers = 1);

// `bin_lo<TAB>bin_hi<TAB>count` rows after a header; no rows for an empty
// report.
std::string FormatHistogram(const OverlapReport& report,
                            std::span<const std::string> header_comments = {});
void EmitHistogram(const OverlapReport& report, const std::filesystem::path& path,
                   std::span<const std::string> header_comments = {});

// Triple matching -----------------------------------------------------------

struct MatchResult {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  size_t matched = 0;
  size_t pred_triples = 0;
  size_t gold_triples = 0;
  // mapping[i] is the gold variable of pred variable i, or "" if unmapped.
  std::vector<std::string> pred_variables;
  std::vector<std::string> mapping;
};

struct SmatchOptions {
  int restarts = 10;
  uint64_t seed = 0;
  size_t max_iterations = 10000;  // per restart
};

// Best triple overlap over injective variable mappings, found by steepest
// ascent hill climbing. Restart 0 starts from a concept-matching mapping,
// the rest from random ones.
MatchResult SmatchF1(const TripleSet& pred, const TripleSet& gold,
                     const SmatchOptions& options = {});

// Precision/recall/F1 from counts; F1 is 0 when both are 0.
MatchResult ScoreFromCounts(size_t matched, size_t pred_triples, size_t gold_triples);

// Ill-formed rate ------------------------------------------------------------

// Percentage of outputs that fail to parse as SBN; 0 for no outputs.
double ErrRate(std::span<const std::string> outputs);

// BLEU -----------------------------------------------------------------------

enum class BleuSmoothing { kNone, kAddOne };

struct BleuOptions {
  int max_n = 4;
  BleuSmoothing smoothing = BleuSmoothing::kNone;
};

struct BleuStats {
  std::vector<size_t> matches;  // clipped n-gram matches per order
  std::vector<size_t> totals;   // hypothesis n-grams per order
  size_t hyp_length = 0;
  size_t ref_length = 0;
};

BleuStats CollectBleuStats(std::span<const std::vector<std::string>> hypotheses,
                           std::span<const std::vector<std::string>> references,
                           int max_n = 4);

// Corpus-level BLEU in [0, 1]. Throws Error on a length mismatch or empty
// input.
double CorpusBleu(std::span<const std::vector<std::string>> hypotheses,
                  std::span<const std::vector<std::string>> references,
                  const BleuOptions& options = {});

}  // namespace drskit

#endif  // DRSKIT_METRICS_H_
