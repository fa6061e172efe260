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

#include <benchmark/benchmark.h>

#include "drskit/metrics.h"
#include "drskit/sbn.h"
#include "support/synthetic.h"

namespace drskit {
namespace {

void BM_SmatchRandomPair(benchmark::State& state) {
  Rng rng(7);
  std::vector<std::pair<TripleSet, TripleSet>> pairs;
  for (int i = 0; i < 32; ++i) {
    int vars = static_cast<int>(state.range(0));
    pairs.emplace_back(ToTriples(ParseSbn(testing::RandomSbnText(rng, vars))),
                       ToTriples(ParseSbn(testing::RandomSbnText(rng, vars))));
  }
  size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(SmatchF1(a, b));
  }
}
BENCHMARK(BM_SmatchRandomPair)->Arg(6)->Arg(12)->Arg(24);

void BM_CorpusBleu(benchmark::State& state) {
  auto docs = testing::GrammarCorpus(state.range(0), 4);
  auto other = testing::GrammarCorpus(state.range(0), 5);
  std::vector<std::vector<std::string>> hyp, ref;
  for (size_t i = 0; i < docs.size(); ++i) {
    hyp.push_back(docs[i].tokens);
    ref.push_back(other[i].tokens);
  }
  for (auto _ : state) benchmark::DoNotOptimize(CorpusBleu(hyp, ref));
}
BENCHMARK(BM_CorpusBleu)->Arg(1000);

}  // namespace
}  // namespace drskit
