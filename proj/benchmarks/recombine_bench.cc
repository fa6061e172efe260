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

#include "drskit/plausibility.h"
#include "drskit/recombine.h"
#include "drskit/subtree_index.h"
#include "support/synthetic.h"

namespace drskit {
namespace {

struct Fixture {
  std::vector<IndexedTree> trees;
  std::vector<SourceTree> sources;
  SubtreeIndex index;

  explicit Fixture(size_t docs) {
    for (const Document& d : testing::GrammarCorpus(docs, 8)) {
      CcgTree t = ParseTree(*d.ccg);
      trees.push_back({d.id, t});
      sources.push_back({d.id, t, true});
    }
    index = ExtractSubtrees(trees);
  }
};

void BM_ExtractSubtrees(benchmark::State& state) {
  Fixture f(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ExtractSubtrees(f.trees));
}
BENCHMARK(BM_ExtractSubtrees)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GenerateSet(benchmark::State& state) {
  Fixture f(400);
  GenerateConfig config;
  config.target = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(GenerateSet(f.sources, f.index, config));
}
BENCHMARK(BM_GenerateSet)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_NgramScore(benchmark::State& state) {
  std::vector<std::vector<std::string>> training;
  for (const Document& d : testing::GrammarCorpus(2000, 9)) training.push_back(d.tokens);
  NgramScorer scorer(training);
  for (auto _ : state) benchmark::DoNotOptimize(scorer.ScoreBatch(training));
  state.SetItemsProcessed(state.iterations() * training.size());
}
BENCHMARK(BM_NgramScore)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace drskit
