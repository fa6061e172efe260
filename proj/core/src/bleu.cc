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

#include <cmath>
#include <map>

#include "drskit/error.h"
#include "drskit/metrics.h"

namespace drskit {

namespace {

using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts CountNgrams(const std::vector<std::string>& tokens, size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

}  // namespace

BleuStats CollectBleuStats(std::span<const std::vector<std::string>> hypotheses,
                           std::span<const std::vector<std::string>> references,
                           int max_n) {
  if (hypotheses.size() != references.size()) {
    throw Error("BLEU: " + std::to_string(hypotheses.size()) + " hypotheses but " +
                std::to_string(references.size()) + " references");
  }
  if (max_n < 1) throw Error("BLEU: max_n must be positive");
  BleuStats stats;
  stats.matches.assign(max_n, 0);
  stats.totals.assign(max_n, 0);
  for (size_t i = 0; i < hypotheses.size(); ++i) {
    const auto& hyp = hypotheses[i];
    const auto& ref = references[i];
    stats.hyp_length += hyp.size();
    stats.ref_length += ref.size();
    for (int n = 1; n <= max_n; ++n) {
      NgramCounts h = CountNgrams(hyp, n);
      NgramCounts r = CountNgrams(ref, n);
      for (const auto& [gram, count] : h) {
        stats.totals[n - 1] += count;
        auto it = r.find(gram);
        if (it != r.end()) stats.matches[n - 1] += std::min(count, it->second);
      }
    }
  }
  return stats;
}

double CorpusBleu(std::span<const std::vector<std::string>> hypotheses,
                  std::span<const std::vector<std::string>> references,
                  const BleuOptions& options) {
  if (hypotheses.empty()) throw Error("BLEU: empty input");
  BleuStats stats = CollectBleuStats(hypotheses, references, options.max_n);
  if (stats.hyp_length == 0) return 0;

  // Orders with no hypothesis n-grams are left out of the geometric mean.
  double log_sum = 0;
  int orders = 0;
  for (int n = 1; n <= options.max_n; ++n) {
    double total = static_cast<double>(stats.totals[n - 1]);
    if (total == 0) continue;
    double match = static_cast<double>(stats.matches[n - 1]);
    if (options.smoothing == BleuSmoothing::kAddOne && n >= 2) {
      match += 1;
      total += 1;
    }
    if (match == 0) return 0;
    log_sum += std::log(match / total);
    ++orders;
  }
  if (orders == 0) return 0;
  double bp = 1;
  if (stats.hyp_length < stats.ref_length) {
    bp = std::exp(1 - static_cast<double>(stats.ref_length) / stats.hyp_length);
  }
  return bp * std::exp(log_sum / orders);
}

}  // namespace drskit
