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

#include "drskit/recombine.h"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace drskit {

const char* OpKindName(OpKind kind) {
  return kind == OpKind::kSubstitution ? "substitution" : "extension";
}

RecombineError::RecombineError(Kind kind, const std::string& message)
    : DataError(message), kind_(kind) {}

namespace {

// Occurrences of `entry` from documents other than `self`.
size_t ForeignCount(const SubtreeEntry& entry, long self) {
  if (self < 0) return entry.occurrences.size();
  size_t n = 0;
  for (const auto& occ : entry.occurrences) {
    if (static_cast<long>(occ.doc) != self) ++n;
  }
  return n;
}

const Occurrence& PickForeign(const SubtreeEntry& entry, long self, Rng& rng) {
  size_t n = ForeignCount(entry, self);
  size_t k = rng.Uniform(n);
  for (const auto& occ : entry.occurrences) {
    if (self >= 0 && static_cast<long>(occ.doc) == self) continue;
    if (k-- == 0) return occ;
  }
  return entry.occurrences.back();
}

bool HasReplacement(const std::vector<SubtreeEntry>& bucket, const CcgTree& node, long self) {
  for (const auto& entry : bucket) {
    if (ForeignCount(entry, self) > 0 && !entry.tree.StructurallyEqual(node)) return true;
  }
  return false;
}

}  // namespace

OpResult Substitute(const CcgTree& tree, std::string_view source_id,
                    const SubtreeIndex& index, Rng& rng, std::span<const TreePath> blocked) {
  const long self = index.DocIndex(std::string(source_id));
  struct Site {
    TreePath path;
    const CcgTree* node;
    const std::vector<SubtreeEntry>* bucket;
  };
  std::vector<Site> sites;
  ForEachNode(tree, [&](const TreePath& path, const CcgTree& node) {
    if (path.empty()) return;
    for (const auto& b : blocked) {
      if (PathsNested(path, b)) return;
    }
    const auto* bucket = index.Subtrees(node.category());
    if (bucket && HasReplacement(*bucket, node, self)) sites.push_back({path, &node, bucket});
  });
  if (sites.empty()) {
    throw RecombineError(RecombineError::Kind::kNoCompatibleSubtree,
                         "no site with a distinct same-category subtree");
  }

  const Site& site = sites[rng.Uniform(sites.size())];
  std::vector<double> weights(site.bucket->size(), 0.0);
  for (size_t i = 0; i < site.bucket->size(); ++i) {
    const SubtreeEntry& entry = (*site.bucket)[i];
    if (!entry.tree.StructurallyEqual(*site.node)) {
      weights[i] = static_cast<double>(ForeignCount(entry, self));
    }
  }
  const SubtreeEntry& entry = (*site.bucket)[rng.Weighted(weights)];
  const Occurrence& occ = PickForeign(entry, self, rng);

  OpResult result;
  result.op.kind = OpKind::kSubstitution;
  result.op.site = site.path;
  result.op.site_span = YieldSpan(tree, site.path);
  result.op.site_category = site.node->category();
  result.op.replacement_category = occ.tree.category();
  result.op.removed = *site.node;
  result.op.replacement = occ.tree;
  result.op.donor = occ.tree;
  result.op.donor_id = index.doc_ids()[occ.doc];
  result.tree = ReplaceAt(tree, site.path, occ.tree);
  return result;
}

OpResult Extend(const CcgTree& tree, std::string_view source_id, const SubtreeIndex& index,
                Rng& rng) {
  const long self = index.DocIndex(std::string(source_id));
  struct Site {
    TreePath path;
    const CcgTree* leaf;
    const std::vector<SubtreeEntry>* bucket;
  };
  std::vector<Site> sites;
  ForEachNode(tree, [&](const TreePath& path, const CcgTree& node) {
    if (!node.is_leaf()) return;
    const auto* bucket = index.Templates(node.category());
    if (!bucket) return;
    for (const auto& entry : *bucket) {
      if (ForeignCount(entry, self) > 0) {
        sites.push_back({path, &node, bucket});
        return;
      }
    }
  });
  if (sites.empty()) {
    throw RecombineError(RecombineError::Kind::kNoTemplate, "no leaf category has a template");
  }

  const Site& site = sites[rng.Uniform(sites.size())];
  std::vector<double> weights(site.bucket->size());
  for (size_t i = 0; i < site.bucket->size(); ++i) {
    weights[i] = static_cast<double>(ForeignCount((*site.bucket)[i], self));
  }
  const SubtreeEntry& entry = (*site.bucket)[rng.Weighted(weights)];
  const Occurrence& occ = PickForeign(entry, self, rng);
  CcgTree grown = ReplaceAt(occ.tree, occ.slot, *site.leaf);

  OpResult result;
  result.op.kind = OpKind::kExtension;
  result.op.site = site.path;
  result.op.site_span = YieldSpan(tree, site.path);
  result.op.site_category = site.leaf->category();
  result.op.replacement_category = grown.category();
  result.op.removed = *site.leaf;
  result.op.replacement = grown;
  result.op.donor = occ.tree;
  result.op.slot = occ.slot;
  result.op.donor_id = index.doc_ids()[occ.doc];
  result.tree = ReplaceAt(tree, site.path, grown);
  return result;
}

Candidate ApplyIterated(const CcgTree& tree, std::string_view source_id,
                        const SubtreeIndex& index, Rng& rng, OpKind kind, int n,
                        bool capitalize) {
  if (n < 1) throw Error("iteration count must be at least 1");
  Candidate cand;
  cand.source_id = std::string(source_id);
  cand.tree = tree;
  std::vector<TreePath> blocked;
  for (int i = 0; i < n; ++i) {
    OpResult r = kind == OpKind::kSubstitution
                     ? Substitute(cand.tree, source_id, index, rng, blocked)
                     : Extend(cand.tree, source_id, index, rng);
    if (kind == OpKind::kSubstitution) blocked.push_back(r.op.site);
    cand.tree = std::move(r.tree);
    cand.ops.push_back(std::move(r.op));
  }
  cand.text = RealizeText(cand.tree, capitalize);
  return cand;
}

// Semantics -----------------------------------------------------------------

namespace {

void CollectAnchors(const CcgTree& t, std::vector<size_t>& out, const CcgTree* skip = nullptr) {
  if (&t == skip) return;
  if (t.is_leaf()) {
    out.insert(out.end(), t.anchors().begin(), t.anchors().end());
    return;
  }
  for (size_t i = 0; i < t.child_count(); ++i) CollectAnchors(t.child(i), out, skip);
}

std::vector<size_t> SortedAnchors(const CcgTree& t, const CcgTree* skip = nullptr) {
  std::vector<size_t> a;
  CollectAnchors(t, a, skip);
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// Node span covering exactly `anchors`, which must be contiguous entities.
std::optional<NodeSpan> EntitySpan(const SbnGraph& g, const std::vector<size_t>& anchors) {
  if (anchors.empty()) return std::nullopt;
  if (anchors.back() >= g.size()) return std::nullopt;
  if (anchors.back() - anchors.front() + 1 != anchors.size()) return std::nullopt;
  for (size_t a : anchors) {
    if (g.nodes()[a].is_relation()) return std::nullopt;
  }
  return NodeSpan{anchors.front(), anchors.back() + 1};
}

// Donor nodes in `span` as a fragment. Edges staying inside the span are
// kept; edges to `slot_nodes` become boundary edges to `host_entity`;
// other edges leaving the span and box references are dropped.
SbnFragment ExtractFragment(const SbnGraph& donor, NodeSpan span,
                            const std::vector<size_t>& slot_nodes,
                            std::optional<size_t> host_entity) {
  SbnFragment frag;
  for (size_t i = span.begin; i < span.end; ++i) {
    SbnNode node{donor.nodes()[i].head, {}};
    size_t self = i - span.begin;
    for (const SbnEdge& edge : donor.nodes()[i].edges) {
      if (const auto* off = std::get_if<NodeOffset>(&edge.target)) {
        size_t target = donor.ResolveNode(i, *off);
        if (target >= span.begin && target < span.end) {
          node.edges.push_back(edge);
        } else if (host_entity &&
                   std::find(slot_nodes.begin(), slot_nodes.end(), target) != slot_nodes.end()) {
          frag.boundary.push_back({self, edge.label, *host_entity});
        }
      } else if (std::holds_alternative<Constant>(edge.target)) {
        node.edges.push_back(edge);
      }
    }
    frag.nodes.push_back(std::move(node));
  }
  return frag;
}

std::vector<size_t> MapAnchors(const std::vector<size_t>& anchors,
                               const std::vector<std::optional<size_t>>& map) {
  std::vector<size_t> out;
  for (size_t a : anchors) {
    if (a < map.size() && map[a]) out.push_back(*map[a]);
  }
  return out;
}

std::vector<size_t> ShiftAnchors(const std::vector<size_t>& anchors, NodeSpan from,
                                 size_t to) {
  std::vector<size_t> out;
  for (size_t a : anchors) {
    if (a >= from.begin && a < from.end) out.push_back(to + (a - from.begin));
  }
  return out;
}

CcgTree DropAnchors(const CcgTree& t) {
  return t.WithAnchors([](const std::vector<size_t>&) { return std::vector<size_t>{}; });
}

[[noreturn]] void NoAlignment(const RecombinationOp& op, const std::string& why) {
  throw RecombineError(RecombineError::Kind::kNoAlignment,
                       std::string(OpKindName(op.kind)) + " at tokens [" +
                           std::to_string(op.site_span.first) + "," +
                           std::to_string(op.site_span.second) + "): " + why);
}

}  // namespace

SbnGraph SpliceSemantics(const Candidate& candidate, const SemanticLookup& lookup) {
  const DocSemantics* source = lookup(candidate.source_id);
  if (!source) {
    throw RecombineError(RecombineError::Kind::kNoAlignment,
                         "no semantics for source " + candidate.source_id);
  }
  CcgTree tree = source->tree;
  SbnGraph sbn = source->sbn;

  for (const RecombinationOp& op : candidate.ops) {
    const CcgTree& site = SubtreeAt(tree, op.site);
    if (!site.StructurallyEqual(op.removed)) NoAlignment(op, "site does not match the op");
    const DocSemantics* donor = lookup(op.donor_id);
    if (!donor) NoAlignment(op, "no semantics for donor " + op.donor_id);

    if (op.kind == OpKind::kSubstitution) {
      std::vector<size_t> host = SortedAnchors(site);
      std::vector<size_t> given = SortedAnchors(op.donor);
      if (host.empty() && given.empty()) {
        tree = ReplaceAt(tree, op.site, DropAnchors(op.donor));
        continue;
      }
      auto host_span = EntitySpan(sbn, host);
      if (!host_span) NoAlignment(op, "site has no contiguous SBN span");
      auto donor_span = EntitySpan(donor->sbn, given);
      if (!donor_span) NoAlignment(op, "replacement has no contiguous SBN span");

      SbnFragment frag = ExtractFragment(donor->sbn, *donor_span, {}, std::nullopt);
      if (host_span->size() == donor_span->size()) {
        // Same shape: the new nodes take over the host nodes' outside edges.
        for (size_t k = 0; k < host_span->size(); ++k) {
          size_t node = host_span->begin + k;
          for (const SbnEdge& edge : sbn.nodes()[node].edges) {
            const auto* off = std::get_if<NodeOffset>(&edge.target);
            if (!off) continue;
            size_t target = sbn.ResolveNode(node, *off);
            if (target >= host_span->begin && target < host_span->end) continue;
            frag.boundary.push_back({k, edge.label, *sbn.entity_of(target)});
          }
        }
      }
      SpliceResult r = SpliceSbnDetailed(sbn, *host_span, frag, SpliceMode::kReplace);
      const auto& map = r.host_node_map;
      CcgTree moved = tree.WithAnchors(
          [&](const std::vector<size_t>& a) { return MapAnchors(a, map); });
      const size_t begin = r.fragment_begin;
      CcgTree inserted = op.donor.WithAnchors([&](const std::vector<size_t>& a) {
        return ShiftAnchors(a, *donor_span, begin);
      });
      tree = ReplaceAt(moved, op.site, inserted);
      sbn = std::move(r.graph);
      continue;
    }

    // Extension: `site` is the leaf that was grown.
    const CcgTree& donor_slot = SubtreeAt(op.donor, op.slot);
    std::vector<size_t> slot_nodes = SortedAnchors(donor_slot);
    std::vector<size_t> added = SortedAnchors(op.donor, &donor_slot);
    if (added.empty()) {
      CcgTree grown = ReplaceAt(DropAnchors(op.donor), op.slot, site);
      tree = ReplaceAt(tree, op.site, grown);
      continue;
    }
    std::vector<size_t> host = site.anchors();
    std::sort(host.begin(), host.end());
    if (host.empty()) NoAlignment(op, "extended leaf has no SBN node");
    auto donor_span = EntitySpan(donor->sbn, added);
    if (!donor_span) NoAlignment(op, "template has no contiguous SBN span");
    auto host_entity = sbn.entity_of(host.front());
    if (!host_entity) NoAlignment(op, "extended leaf anchors a discourse relation");

    bool before;
    if (!slot_nodes.empty() && donor_span->end <= slot_nodes.front()) {
      before = true;
    } else if (!slot_nodes.empty() && donor_span->begin > slot_nodes.back()) {
      before = false;
    } else if (slot_nodes.empty()) {
      // Fall back to surface order in the template.
      auto [slot_begin, slot_end] = YieldSpan(op.donor, op.slot);
      before = slot_begin > 0;
      if (slot_begin > 0 && slot_end < op.donor.leaf_count()) {
        NoAlignment(op, "template material on both sides of the slot");
      }
    } else {
      NoAlignment(op, "template nodes interleave with the slot's nodes");
    }
    size_t at = before ? host.front() : host.back() + 1;
    SbnFragment frag = ExtractFragment(donor->sbn, *donor_span, slot_nodes, *host_entity);
    SpliceResult r = SpliceSbnDetailed(sbn, NodeSpan{at, at}, frag, SpliceMode::kInsert);
    const auto& map = r.host_node_map;
    const size_t begin = r.fragment_begin;
    CcgTree moved_leaf = site.WithAnchors(
        [&](const std::vector<size_t>& a) { return MapAnchors(a, map); });
    CcgTree grown = ReplaceAt(op.donor.WithAnchors([&](const std::vector<size_t>& a) {
                                return ShiftAnchors(a, *donor_span, begin);
                              }),
                              op.slot, moved_leaf);
    CcgTree moved = tree.WithAnchors(
        [&](const std::vector<size_t>& a) { return MapAnchors(a, map); });
    tree = ReplaceAt(moved, op.site, grown);
    sbn = std::move(r.graph);
  }
  return sbn;
}

// Generation ----------------------------------------------------------------

std::vector<MixEntry> DefaultMix() {
  return {{OpKind::kSubstitution, 1, 1.0},
          {OpKind::kSubstitution, 2, 1.0},
          {OpKind::kExtension, 1, 1.0},
          {OpKind::kExtension, 2, 1.0}};
}

GenerateResult GenerateSet(std::span<const SourceTree> sources, const SubtreeIndex& index,
                           const GenerateConfig& config) {
  GenerateResult result;
  if (config.target == 0 || sources.empty()) {
    result.underfull = config.target > 0;
    return result;
  }
  const std::vector<MixEntry> mix = config.mix.empty() ? DefaultMix() : config.mix;
  std::vector<double> weights;
  for (const auto& m : mix) {
    if (m.iterations < 1 || m.weight < 0) throw Error("invalid iteration mix entry");
    weights.push_back(m.weight);
  }

  std::vector<std::string> source_texts(sources.size());
  for (size_t i = 0; i < sources.size(); ++i) {
    source_texts[i] = RealizeText(sources[i].tree, sources[i].capitalized);
  }

  std::unordered_set<std::string> seen;
  size_t idle = 0;
  for (size_t round = 0; round < config.max_rounds; ++round) {
    std::vector<size_t> order(sources.size());
    std::iota(order.begin(), order.end(), 0);
    Rng order_rng(DeriveSeed(config.seed, "round-order", round));
    order_rng.Shuffle(order);

    std::vector<std::optional<Candidate>> produced(sources.size());
    ParallelFor(sources.size(), config.workers, [&](size_t k) {
      const SourceTree& src = sources[order[k]];
      Rng rng(DeriveSeed(config.seed, src.id, round));
      const MixEntry& m = mix[rng.Weighted(weights)];
      Candidate cand;
      try {
        cand = ApplyIterated(src.tree, src.id, index, rng, m.kind, m.iterations,
                             src.capitalized);
      } catch (const RecombineError&) {
        return;
      }
      if (config.semantics) {
        try {
          cand.sbn = SpliceSemantics(cand, *config.semantics);
        } catch (const DataError& e) {
          cand.sbn_error = e.what();
        }
      }
      produced[k] = std::move(cand);
    });

    ++result.rounds;
    size_t added = 0;
    for (size_t k = 0; k < produced.size(); ++k) {
      ++result.attempts;
      if (!produced[k]) {
        ++result.failures;
        continue;
      }
      Candidate& cand = *produced[k];
      if (cand.text == source_texts[order[k]]) continue;
      if (!seen.insert(cand.text).second) continue;
      result.candidates.push_back(std::move(cand));
      ++added;
      if (result.candidates.size() == config.target) return result;
    }
    idle = added == 0 ? idle + 1 : 0;
    if (idle >= config.max_idle_rounds) break;
  }
  result.underfull = result.candidates.size() < config.target;
  return result;
}

}  // namespace drskit
