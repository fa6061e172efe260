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

#include "drskit/subtree_index.h"

#include "drskit/util.h"

namespace drskit {

namespace {

uint64_t SlotHash(const TreePath& slot) {
  uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (uint8_t s : slot) h = Mix64(h ^ (s + 1));
  return h;
}

}  // namespace

void SubtreeIndex::Insert(std::unordered_map<Category, Bucket, CategoryHash>& buckets,
                          std::unordered_map<Category, Lookup, CategoryHash>& lookups,
                          const CcgTree& tree, const TreePath& slot, uint32_t doc,
                          size_t& distinct, size_t& total) {
  Bucket& bucket = buckets[tree.category()];
  Lookup& lookup = lookups[tree.category()];
  uint64_t key = tree.StructuralHash() ^ (slot.empty() ? 0 : SlotHash(slot));
  ++total;
  auto [lo, hi] = lookup.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    SubtreeEntry& entry = bucket[it->second];
    if (entry.slot == slot && entry.tree.StructurallyEqual(tree)) {
      entry.occurrences.push_back({doc, tree, slot});
      return;
    }
  }
  lookup.emplace(key, bucket.size());
  bucket.push_back({tree, slot, {{doc, tree, slot}}});
  ++distinct;
}

void SubtreeIndex::Add(const IndexedTree& indexed) {
  uint32_t doc;
  auto found = doc_index_.find(indexed.id);
  if (found == doc_index_.end()) {
    doc = static_cast<uint32_t>(doc_ids_.size());
    doc_ids_.push_back(indexed.id);
    doc_index_.emplace(indexed.id, doc);
  } else {
    doc = found->second;
  }

  ForEachNode(indexed.tree, [&](const TreePath&, const CcgTree& subtree) {
    Insert(subtrees_, subtree_lookup_, subtree, {}, doc, distinct_subtrees_,
           total_subtrees_);
    if (subtree.is_leaf()) return;
    ForEachNode(subtree, [&](const TreePath& path, const CcgTree& node) {
      if (!node.is_leaf() || node.category() != subtree.category()) return;
      Insert(templates_, template_lookup_, subtree, path, doc, distinct_templates_,
             total_templates_);
    });
  });
}

const std::vector<SubtreeEntry>* SubtreeIndex::Subtrees(const Category& category) const {
  auto it = subtrees_.find(category);
  return it == subtrees_.end() ? nullptr : &it->second;
}

const std::vector<SubtreeEntry>* SubtreeIndex::Templates(const Category& category) const {
  auto it = templates_.find(category);
  return it == templates_.end() ? nullptr : &it->second;
}

long SubtreeIndex::DocIndex(const std::string& id) const {
  auto it = doc_index_.find(id);
  return it == doc_index_.end() ? -1 : static_cast<long>(it->second);
}

SubtreeIndex ExtractSubtrees(std::span<const IndexedTree> trees) {
  SubtreeIndex index;
  for (const auto& t : trees) index.Add(t);
  return index;
}

}  // namespace drskit
