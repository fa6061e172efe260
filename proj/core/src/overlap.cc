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
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "drskit/metrics.h"
#include "drskit/util.h"

namespace drskit {

namespace {

using TokenSet = std::vector<uint32_t>;  // sorted, unique

double Jaccard(const TokenSet& a, const TokenSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  size_t i = 0, j = 0, inter = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

class Interner {
 public:
  TokenSet Intern(std::span<const std::string> tokens) {
    TokenSet out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
      auto [it, inserted] = ids_.emplace(t, static_cast<uint32_t>(ids_.size()));
      out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::unordered_map<std::string, uint32_t> ids_;
};

}  // namespace

double WordOverlap(std::span<const std::string> a, std::span<const std::string> b) {
  Interner interner;
  TokenSet sa = interner.Intern(a);
  TokenSet sb = interner.Intern(b);
  return Jaccard(sa, sb);
}

size_t OverlapBin(double rate, size_t bins) {
  if (!(rate > 0)) return 0;
  size_t bin = static_cast<size_t>(rate * static_cast<double>(bins));
  return std::min(bin, bins - 1);
}

OverlapReport ComputeOverlapReport(std::span<const Document* const> train,
                                   std::span<const Document* const> test, int workers) {
  Interner interner;
  std::vector<TokenSet> train_sets;
  train_sets.reserve(train.size());
  for (const Document* d : train) train_sets.push_back(interner.Intern(d->tokens));
  std::vector<TokenSet> test_sets;
  test_sets.reserve(test.size());
  for (const Document* d : test) test_sets.push_back(interner.Intern(d->tokens));

  OverlapReport report;
  report.histogram.assign(OverlapReport::kBins, 0);
  report.per_doc.resize(test.size());
  ParallelFor(test.size(), workers, [&](size_t i) {
    OverlapEntry& e = report.per_doc[i];
    e.test_id = test[i]->id;
    double best = -1;
    size_t best_j = 0;
    for (size_t j = 0; j < train_sets.size(); ++j) {
      double v = Jaccard(test_sets[i], train_sets[j]);
      if (v > best) {
        best = v;
        best_j = j;
        if (best >= 1.0) break;
      }
    }
    if (train_sets.empty()) {
      e.max_overlap = 0;
    } else {
      e.max_overlap = best;
      e.train_id = train[best_j]->id;
    }
  });
  double sum = 0;
  for (const auto& e : report.per_doc) {
    ++report.histogram[OverlapBin(e.max_overlap)];
    sum += e.max_overlap;
  }
  report.mean = report.per_doc.empty() ? 0 : sum / static_cast<double>(report.per_doc.size());
  return report;
}

OverlapReport ComputeOverlapReport(std::span<const Document> train,
                                   std::span<const Document> test, int workers) {
  std::vector<const Document*> tr, te;
  for (const auto& d : train) tr.push_back(&d);
  for (const auto& d : test) te.push_back(&d);
  return ComputeOverlapReport(std::span<const Document* const>(tr),
                              std::span<const Document* const>(te), workers);
}

std::string FormatHistogram(const OverlapReport& report,
                            std::span<const std::string> header_comments) {
  std::ostringstream out;
  for (const auto& c : header_comments) out << "# " << c << '\n';
  out << "bin_lo\tbin_hi\tcount\n";
  if (report.per_doc.empty()) return out.str();
  const size_t bins = report.histogram.size();
  for (size_t b = 0; b < bins; ++b) {
    char row[64];
    std::snprintf(row, sizeof(row), "%.2f\t%.2f\t%zu\n", static_cast<double>(b) / bins,
                  static_cast<double>(b + 1) / bins, report.histogram[b]);
    out << row;
  }
  return out.str();
}

void EmitHistogram(const OverlapReport& report, const std::filesystem::path& path,
                   std::span<const std::string> header_comments) {
  WriteFileAtomic(path, FormatHistogram(report, header_comments));
}

double ErrRate(std::span<const std::string> outputs) {
  if (outputs.empty()) return 0.0;
  size_t failed = 0;
  for (const auto& o : outputs) {
    if (!TryParseSbn(o)) ++failed;
  }
  return 100.0 * static_cast<double>(failed) / static_cast<double>(outputs.size());
}

}  // namespace drskit
