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
#include <unordered_map>
#include <unordered_set>

#include "drskit/metrics.h"
#include "drskit/util.h"

namespace drskit {

namespace {

struct RelationTriple {
  int source;
  int relation;
  int target;
};

// Matching problem with variables replaced by dense indices.
class Problem {
 public:
  Problem(const TripleSet& pred, const TripleSet& gold) {
    pred_vars_ = pred.Variables();
    gold_vars_ = gold.Variables();
    np_ = pred_vars_.size();
    ng_ = gold_vars_.size();
    std::unordered_map<std::string, int> pidx, gidx;
    for (size_t i = 0; i < np_; ++i) pidx.emplace(pred_vars_[i], static_cast<int>(i));
    for (size_t i = 0; i < ng_; ++i) gidx.emplace(gold_vars_[i], static_cast<int>(i));

    std::unordered_map<std::string, int> rel_ids;
    auto rel_id = [&](const std::string& r) {
      return rel_ids.emplace(r, static_cast<int>(rel_ids.size())).first->second;
    };

    // Unary (instance and constant-valued) triples of the gold graph, per
    // (relation, value), listing the gold variables that carry them.
    std::unordered_map<std::string, std::vector<int>> gold_unary;
    for (const Triple& t : gold.triples) {
      if (t.target_is_constant) {
        gold_unary[t.relation + '\x1f' + t.target].push_back(gidx.at(t.source));
      } else {
        gold_rel_.insert(Key(gidx.at(t.source), rel_id(t.relation), gidx.at(t.target)));
      }
    }
    unary_.assign(np_, std::vector<int>(ng_, 0));
    incident_.assign(np_, {});
    for (const Triple& t : pred.triples) {
      int p = pidx.at(t.source);
      if (t.target_is_constant) {
        auto it = gold_unary.find(t.relation + '\x1f' + t.target);
        if (it == gold_unary.end()) continue;
        for (int g : it->second) ++unary_[p][g];
        if (t.relation == kInstanceRelation) {
          for (int g : it->second) concept_match_[p].push_back(g);
        }
      } else {
        auto found = rel_ids.find(t.relation);
        int rel = found == rel_ids.end() ? -1 : found->second;
        int q = pidx.at(t.target);
        int k = static_cast<int>(rels_.size());
        rels_.push_back({p, rel, q});
        incident_[p].push_back(k);
        if (q != p) incident_[q].push_back(k);
      }
    }
  }

  size_t np() const { return np_; }
  size_t ng() const { return ng_; }
  const std::vector<std::string>& pred_vars() const { return pred_vars_; }
  const std::vector<std::string>& gold_vars() const { return gold_vars_; }

  int Score(const std::vector<int>& m) const {
    int s = 0;
    for (size_t p = 0; p < np_; ++p) {
      if (m[p] >= 0) s += unary_[p][m[p]];
    }
    for (const auto& t : rels_) s += Matches(m, t);
    return s;
  }

  // Score change if pred variable p maps to g instead.
  int RemapDelta(std::vector<int>& m, int p, int g) const {
    int old = m[p];
    int delta = (g >= 0 ? unary_[p][g] : 0) - (old >= 0 ? unary_[p][old] : 0);
    for (int k : incident_[p]) delta -= Matches(m, rels_[k]);
    m[p] = g;
    for (int k : incident_[p]) delta += Matches(m, rels_[k]);
    m[p] = old;
    return delta;
  }

  // Score change if p and q exchange their images.
  int SwapDelta(std::vector<int>& m, int p, int q) const {
    int gp = m[p], gq = m[q];
    int delta = (gq >= 0 ? unary_[p][gq] : 0) + (gp >= 0 ? unary_[q][gp] : 0) -
                (gp >= 0 ? unary_[p][gp] : 0) - (gq >= 0 ? unary_[q][gq] : 0);
    auto touched = [&](auto&& fn) {
      for (int k : incident_[p]) fn(k);
      for (int k : incident_[q]) {
        const auto& t = rels_[k];
        if (t.source != p && t.target != p) fn(k);
      }
    };
    touched([&](int k) { delta -= Matches(m, rels_[k]); });
    std::swap(m[p], m[q]);
    touched([&](int k) { delta += Matches(m, rels_[k]); });
    std::swap(m[p], m[q]);
    return delta;
  }

  // Greedy concept match: each pred variable takes the first free gold
  // variable with the same instance triple.
  std::vector<int> ConceptStart() const {
    std::vector<int> m(np_, -1);
    std::vector<bool> used(ng_, false);
    for (size_t p = 0; p < np_; ++p) {
      auto it = concept_match_.find(static_cast<int>(p));
      if (it == concept_match_.end()) continue;
      for (int g : it->second) {
        if (!used[g]) {
          m[p] = g;
          used[g] = true;
          break;
        }
      }
    }
    return m;
  }

  std::vector<int> RandomStart(Rng& rng) const {
    std::vector<int> gold(ng_);
    for (size_t g = 0; g < ng_; ++g) gold[g] = static_cast<int>(g);
    rng.Shuffle(gold);
    std::vector<int> m(np_, -1);
    for (size_t p = 0; p < np_ && p < ng_; ++p) m[p] = gold[p];
    // Spread the unmapped slots when there are more pred variables.
    std::vector<int> order(np_);
    for (size_t p = 0; p < np_; ++p) order[p] = static_cast<int>(p);
    rng.Shuffle(order);
    std::vector<int> shuffled(np_, -1);
    for (size_t p = 0; p < np_; ++p) shuffled[order[p]] = m[p];
    return shuffled;
  }

 private:
  static uint64_t Key(int g1, int rel, int g2) {
    return (static_cast<uint64_t>(g1) << 42) ^ (static_cast<uint64_t>(rel) << 21) ^
           static_cast<uint64_t>(g2);
  }

  int Matches(const std::vector<int>& m, const RelationTriple& t) const {
    if (t.relation < 0) return 0;
    int a = m[t.source], b = m[t.target];
    if (a < 0 || b < 0) return 0;
    return gold_rel_.count(Key(a, t.relation, b)) ? 1 : 0;
  }

  std::vector<std::string> pred_vars_, gold_vars_;
  size_t np_ = 0, ng_ = 0;
  std::vector<std::vector<int>> unary_;
  std::vector<RelationTriple> rels_;
  std::vector<std::vector<int>> incident_;
  std::unordered_set<uint64_t> gold_rel_;
  std::unordered_map<int, std::vector<int>> concept_match_;
};

// Steepest ascent from `m`; returns the final score.
int Climb(const Problem& problem, std::vector<int>& m, size_t max_iterations) {
  const int np = static_cast<int>(problem.np());
  const int ng = static_cast<int>(problem.ng());
  int score = problem.Score(m);
  std::vector<int> owner(ng, -1);
  for (int p = 0; p < np; ++p) {
    if (m[p] >= 0) owner[m[p]] = p;
  }
  for (size_t iter = 0; iter < max_iterations; ++iter) {
    int best = 0;
    int kind = -1, a = -1, b = -1;
    for (int p = 0; p < np; ++p) {
      // Remap to a free gold variable or drop the mapping.
      for (int g = -1; g < ng; ++g) {
        if (g == m[p] || (g >= 0 && owner[g] >= 0)) continue;
        int d = problem.RemapDelta(m, p, g);
        if (d > best) {
          best = d;
          kind = 0;
          a = p;
          b = g;
        }
      }
      for (int q = p + 1; q < np; ++q) {
        if (m[p] == m[q]) continue;
        int d = problem.SwapDelta(m, p, q);
        if (d > best) {
          best = d;
          kind = 1;
          a = p;
          b = q;
        }
      }
    }
    if (kind < 0) break;
    if (kind == 0) {
      if (m[a] >= 0) owner[m[a]] = -1;
      m[a] = b;
      if (b >= 0) owner[b] = a;
    } else {
      std::swap(m[a], m[b]);
      if (m[a] >= 0) owner[m[a]] = a;
      if (m[b] >= 0) owner[m[b]] = b;
    }
    score += best;
  }
  return score;
}

}  // namespace

MatchResult ScoreFromCounts(size_t matched, size_t pred_triples, size_t gold_triples) {
  MatchResult r;
  r.matched = matched;
  r.pred_triples = pred_triples;
  r.gold_triples = gold_triples;
  r.precision = pred_triples == 0 ? 0 : static_cast<double>(matched) / pred_triples;
  r.recall = gold_triples == 0 ? 0 : static_cast<double>(matched) / gold_triples;
  r.f1 = r.precision + r.recall == 0
             ? 0
             : 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

MatchResult SmatchF1(const TripleSet& pred, const TripleSet& gold,
                     const SmatchOptions& options) {
  Problem problem(pred, gold);
  int best_score = -1;
  std::vector<int> best_map(problem.np(), -1);
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> m;
    if (r == 0) {
      m = problem.ConceptStart();
    } else {
      Rng rng(DeriveSeed(options.seed, "smatch-restart", static_cast<uint64_t>(r)));
      m = problem.RandomStart(rng);
    }
    int score = Climb(problem, m, options.max_iterations);
    if (score > best_score) {
      best_score = score;
      best_map = m;
    }
  }
  MatchResult result =
      ScoreFromCounts(static_cast<size_t>(std::max(0, best_score)), pred.size(), gold.size());
  result.pred_variables = problem.pred_vars();
  result.mapping.resize(problem.np());
  for (size_t p = 0; p < problem.np(); ++p) {
    if (best_map[p] >= 0) result.mapping[p] = problem.gold_vars()[best_map[p]];
  }
  return result;
}

}  // namespace drskit
