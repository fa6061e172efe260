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

#ifndef DRSKIT_SUBTREE_INDEX_H_
#define DRSKIT_SUBTREE_INDEX_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "drskit/ccg.h"

namespace drskit {

struct IndexedTree {
  std::string id;
  CcgTree tree;
};

// One place a subtree (or template) was seen.
struct Occurrence {
  uint32_t doc = 0;  // position in SubtreeIndex::doc_ids()
  CcgTree tree;      // the corpus copy, anchors included
  TreePath slot;     // templates only: path of the slot leaf
};

// Structurally distinct subtree with all of its occurrences.
struct SubtreeEntry {
  CcgTree tree;
  TreePath slot;  // templates only
  std::vector<Occurrence> occurrences;

  size_t multiplicity() const { return occurrences.size(); }
};

// Catalog of corpus subtrees keyed by root category, plus extension
// templates: subtrees rooted at C holding a C-leaf (the slot).
class SubtreeIndex {
 public:
  void Add(const IndexedTree& tree);

  const std::vector<SubtreeEntry>* Subtrees(const Category& category) const;
  const std::vector<SubtreeEntry>* Templates(const Category& category) const;

  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  // Position of `id` in doc_ids(), or -1.
  long DocIndex(const std::string& id) const;

  size_t distinct_subtrees() const { return distinct_subtrees_; }
  size_t total_subtrees() const { return total_subtrees_; }
  size_t distinct_templates() const { return distinct_templates_; }
  size_t total_templates() const { return total_templates_; }
  size_t category_count() const { return subtrees_.size(); }

 private:
  using Bucket = std::vector<SubtreeEntry>;
  // Within a bucket, entries with the same structural hash (and slot).
  using Lookup = std::unordered_multimap<uint64_t, size_t>;

  void Insert(std::unordered_map<Category, Bucket, CategoryHash>& buckets,
              std::unordered_map<Category, Lookup, CategoryHash>& lookups,
              const CcgTree& tree, const TreePath& slot, uint32_t doc, size_t& distinct,
              size_t& total);

  std::unordered_map<Category, Bucket, CategoryHash> subtrees_;
  std::unordered_map<Category, Lookup, CategoryHash> subtree_lookup_;
  std::unordered_map<Category, Bucket, CategoryHash> templates_;
  std::unordered_map<Category, Lookup, CategoryHash> template_lookup_;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, uint32_t> doc_index_;
  size_t distinct_subtrees_ = 0;
  size_t total_subtrees_ = 0;
  size_t distinct_templates_ = 0;
  size_t total_templates_ = 0;
};

// Indexes every subtree of every tree (leaves included) and every
// template, in input order.
SubtreeIndex ExtractSubtrees(std::span<const IndexedTree> trees);

}  // namespace drskit

#endif  // DRSKIT_SUBTREE_INDEX_H_
