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

#include "drskit/plausibility.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_set>

namespace drskit {

namespace {

const char kBegin[] = "\x02";
const char kEnd[] = "\x03";

std::vector<std::string> Pad(const std::vector<std::string>& tokens, int k) {
  std::vector<std::string> padded;
  padded.reserve(tokens.size() + 2 * k);
  for (int i = 0; i < k; ++i) padded.emplace_back(kBegin);
  padded.insert(padded.end(), tokens.begin(), tokens.end());
  for (int i = 0; i < k; ++i) padded.emplace_back(kEnd);
  return padded;
}

bool ScoreLess(const Candidate& a, const Candidate& b) {
  if (*a.pll != *b.pll) return *a.pll > *b.pll;
  if (a.source_id != b.source_id) return a.source_id < b.source_id;
  return a.text < b.text;
}

}  // namespace

const char* NormalizationName(Normalization n) {
  return n == Normalization::kTotal ? "total" : "per_token";
}

void ScorerSpec::Validate() const {
  if (kind == Kind::kReferenceNgram) {
    if (order < 1) throw Error("scorer order must be at least 1");
    if (!(alpha > 0)) throw Error("scorer alpha must be positive");
  } else if (command.empty()) {
    throw Error("external scorer needs a command");
  }
  if (!(timeout_seconds > 0)) throw Error("scorer timeout must be positive");
}

std::string ScorerSpec::Describe() const {
  std::ostringstream out;
  if (kind == Kind::kReferenceNgram) {
    out << "ngram(order=" << order << ",alpha=" << alpha << ","
        << NormalizationName(normalization) << ")";
  } else {
    out << "external(" << command << "," << NormalizationName(normalization) << ")";
  }
  return out.str();
}

PllScore Scorer::Score(const std::vector<std::string>& sentence) {
  return ScoreBatch(std::span<const std::vector<std::string>>(&sentence, 1)).front();
}

NgramScorer::NgramScorer(std::span<const std::vector<std::string>> training, int order,
                         double alpha)
    : order_(order), alpha_(alpha) {
  if (order < 1) throw Error("scorer order must be at least 1");
  if (!(alpha > 0)) throw Error("scorer alpha must be positive");
  std::unordered_set<std::string> types;
  for (const auto& sentence : training) {
    std::vector<std::string> padded = Pad(sentence, order_);
    for (size_t t = 0; t < sentence.size(); ++t) {
      size_t center = t + order_;
      types.insert(sentence[t]);
      ++full_counts_[ContextKey(padded, center, &sentence[t])];
      ++context_counts_[ContextKey(padded, center, nullptr)];
    }
  }
  vocab_size_ = types.size() + 1;
}

std::string NgramScorer::ContextKey(const std::vector<std::string>& padded, size_t center,
                                    const std::string* word) const {
  std::string key;
  for (size_t i = center - order_; i < center; ++i) {
    key += padded[i];
    key += '\x1f';
  }
  key += '\x1d';
  if (word) key += *word;
  key += '\x1d';
  for (size_t i = center + 1; i <= center + order_; ++i) {
    key += padded[i];
    key += '\x1f';
  }
  return key;
}

double NgramScorer::LogProb(const std::vector<std::string>& sentence,
                            size_t position) const {
  std::vector<std::string> padded = Pad(sentence, order_);
  size_t center = position + order_;
  auto find = [](const auto& map, const std::string& key) -> double {
    auto it = map.find(key);
    return it == map.end() ? 0.0 : static_cast<double>(it->second);
  };
  double c = find(full_counts_, ContextKey(padded, center, &sentence[position]));
  double ctx = find(context_counts_, ContextKey(padded, center, nullptr));
  return std::log((c + alpha_) / (ctx + alpha_ * static_cast<double>(vocab_size_)));
}

PllScore NgramScorer::ScoreOne(const std::vector<std::string>& sentence) const {
  if (sentence.empty()) throw Error("cannot score an empty sentence");
  PllScore s;
  for (size_t t = 0; t < sentence.size(); ++t) s.value += LogProb(sentence, t);
  s.token_count = sentence.size();
  s.normalized = s.value / static_cast<double>(s.token_count);
  return s;
}

std::vector<PllScore> NgramScorer::ScoreBatch(
    std::span<const std::vector<std::string>> sentences, int workers) {
  for (const auto& s : sentences) {
    if (s.empty()) throw Error("cannot score an empty sentence");
  }
  std::vector<PllScore> out(sentences.size());
  ParallelFor(sentences.size(), workers, [&](size_t i) { out[i] = ScoreOne(sentences[i]); });
  return out;
}

std::string NgramScorer::Provenance() const {
  std::ostringstream out;
  out << "ngram(order=" << order_ << ",alpha=" << alpha_ << ",V=" << vocab_size_ << ")";
  return out.str();
}

std::unique_ptr<Scorer> MakeScorer(const ScorerSpec& spec,
                                   std::span<const std::vector<std::string>> training) {
  spec.Validate();
  if (spec.kind == ScorerSpec::Kind::kReferenceNgram) {
    return std::make_unique<NgramScorer>(training, spec.order, spec.alpha);
  }
  auto ms = std::chrono::milliseconds(static_cast<int64_t>(spec.timeout_seconds * 1000));
  return std::make_unique<ExternalScorer>(spec.command, ms);
}

double Normalize(const PllScore& score, Normalization n) {
  return n == Normalization::kTotal ? score.value : score.normalized;
}

void ScoreCandidates(std::span<Candidate> candidates, Scorer& scorer,
                     Normalization normalization, int workers) {
  std::vector<std::vector<std::string>> sentences;
  sentences.reserve(candidates.size());
  for (const Candidate& c : candidates) sentences.push_back(TokenizeText(c.text));
  std::vector<PllScore> scores = scorer.ScoreBatch(sentences, workers);
  for (size_t i = 0; i < candidates.size(); ++i) {
    candidates[i].pll = Normalize(scores[i], normalization);
  }
}

size_t KeepCount(size_t n, double fraction) {
  if (n == 0) return 0;
  double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  if (raw < 1) return 1;
  if (raw > static_cast<double>(n)) return n;
  return static_cast<size_t>(raw);
}

std::vector<Candidate> FilterTop(std::vector<Candidate> cands, double fraction) {
  if (!(fraction > 0 && fraction <= 1)) {
    throw Error("filter fraction must lie in (0, 1]");
  }
  for (const Candidate& c : cands) {
    if (!c.pll) throw Error("candidate from " + c.source_id + " has no score");
  }
  size_t keep = KeepCount(cands.size(), fraction);
  std::sort(cands.begin(), cands.end(), ScoreLess);
  cands.resize(keep);
  return cands;
}

std::string StratumKey(const Candidate& c) {
  if (c.ops.empty()) return "none";
  return std::string(OpKindName(c.ops.front().kind)) + "x" + std::to_string(c.ops.size());
}

std::vector<Candidate> FilterTopPerStratum(std::vector<Candidate> cands, double fraction) {
  std::map<std::string, std::vector<Candidate>> strata;
  for (Candidate& c : cands) strata[StratumKey(c)].push_back(std::move(c));
  std::vector<Candidate> out;
  for (auto& [key, group] : strata) {
    for (Candidate& c : FilterTop(std::move(group), fraction)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), ScoreLess);
  return out;
}

}  // namespace drskit
