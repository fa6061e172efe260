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

#ifndef DRSKIT_PLAUSIBILITY_H_
#define DRSKIT_PLAUSIBILITY_H_

#include <chrono>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "drskit/error.h"
#include "drskit/recombine.h"

namespace drskit {

struct PllScore {
  double value = 0;
  size_t token_count = 0;
  double normalized = 0;
};

enum class Normalization { kTotal, kPerToken };

const char* NormalizationName(Normalization n);

struct ScorerSpec {
  enum class Kind { kReferenceNgram, kExternal };

  Kind kind = Kind::kReferenceNgram;
  int order = 3;         // context tokens on each side
  double alpha = 0.1;
  std::string command;   // external: run with /bin/sh -c
  double timeout_seconds = 60;
  Normalization normalization = Normalization::kPerToken;

  // Throws Error on order < 1, alpha <= 0, or an external spec without a
  // command.
  void Validate() const;
  // Short provenance string, e.g. "ngram(order=3,alpha=0.1,per_token)".
  std::string Describe() const;
};

// Raised when the external scorer cannot be started, times out, or breaks
// the protocol.
class ScorerError : public Error {
 public:
  using Error::Error;
};

class Scorer {
 public:
  virtual ~Scorer() = default;

  // Scores each sentence; the result is index-aligned with the input.
  // Throws Error on an empty sentence.
  virtual std::vector<PllScore> ScoreBatch(
      std::span<const std::vector<std::string>> sentences, int workers = 1) = 0;
  virtual std::string Provenance() const = 0;

  PllScore Score(const std::vector<std::string>& sentence);
};

// Additively smoothed model of a token given k tokens of context on each
// side. The scored position is held out and the sentence is padded with
// boundary symbols:
//   P(w | L, R) = (c(L w R) + alpha) / (c(L . R) + alpha * V)
// with V the number of training types plus one for unseen tokens.
class NgramScorer : public Scorer {
 public:
  NgramScorer(std::span<const std::vector<std::string>> training, int order = 3,
              double alpha = 0.1);

  std::vector<PllScore> ScoreBatch(std::span<const std::vector<std::string>> sentences,
                                   int workers = 1) override;
  std::string Provenance() const override;

  PllScore ScoreOne(const std::vector<std::string>& sentence) const;
  double LogProb(const std::vector<std::string>& sentence, size_t position) const;
  size_t vocabulary_size() const { return vocab_size_; }
  int order() const { return order_; }
  double alpha() const { return alpha_; }

 private:
  std::string ContextKey(const std::vector<std::string>& padded, size_t center,
                         const std::string* word) const;

  int order_;
  double alpha_;
  size_t vocab_size_ = 1;
  std::unordered_map<std::string, uint32_t> full_counts_;
  std::unordered_map<std::string, uint32_t> context_counts_;
};

// Client of a scorer process speaking newline-delimited JSON on its
// standard input and output.
class ExternalScorer : public Scorer {
 public:
  // Starts the process and performs the hello handshake.
  ExternalScorer(const std::string& command,
                 std::chrono::milliseconds timeout = std::chrono::seconds(60),
                 size_t batch_size = 64);
  ~ExternalScorer() override;

  ExternalScorer(const ExternalScorer&) = delete;
  ExternalScorer& operator=(const ExternalScorer&) = delete;

  std::vector<PllScore> ScoreBatch(std::span<const std::vector<std::string>> sentences,
                                   int workers = 1) override;
  std::string Provenance() const override;

 private:
  std::string ReadFrame();
  void WriteAll(const std::string& data);
  void Shutdown();

  std::string command_;
  std::chrono::milliseconds timeout_;
  size_t batch_size_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  int64_t next_id_ = 0;
};

// Builds the scorer named by `spec`. `training` is only used by the
// reference scorer.
std::unique_ptr<Scorer> MakeScorer(const ScorerSpec& spec,
                                   std::span<const std::vector<std::string>> training);

double Normalize(const PllScore& score, Normalization n);

// Scores candidate texts and stores the normalized value in `pll`.
void ScoreCandidates(std::span<Candidate> candidates, Scorer& scorer,
                     Normalization normalization, int workers = 1);

// ceil(fraction * n), clamped to [1, n] for n > 0.
size_t KeepCount(size_t n, double fraction);

// Keeps the KeepCount(|cands|, fraction) best candidates by pll, sorted by
// descending pll, then ascending source_id, then ascending text. Every
// candidate must carry a pll; fraction must lie in (0, 1].
std::vector<Candidate> FilterTop(std::vector<Candidate> cands, double fraction);

// Stratum of a candidate: its operation kind and iteration count.
std::string StratumKey(const Candidate& c);

// FilterTop applied to each stratum separately; the union is returned in
// the same global order.
std::vector<Candidate> FilterTopPerStratum(std::vector<Candidate> cands, double fraction);

}  // namespace drskit

#endif  // DRSKIT_PLAUSIBILITY_H_
