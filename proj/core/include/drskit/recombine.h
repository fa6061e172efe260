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

#ifndef DRSKIT_RECOMBINE_H_
#define DRSKIT_RECOMBINE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drskit/ccg.h"
#include "drskit/sbn.h"
#include "drskit/subtree_index.h"
#include "drskit/util.h"

namespace drskit {

enum class OpKind { kSubstitution, kExtension };

const char* OpKindName(OpKind kind);

struct RecombinationOp {
  OpKind kind = OpKind::kSubstitution;
  TreePath site;                          // in the tree the op was applied to
  std::pair<size_t, size_t> site_span;    // token span of the site before the op
  Category site_category;
  Category replacement_category;
  CcgTree removed;      // subtree at the site before the op
  CcgTree replacement;  // subtree at the site after the op
  CcgTree donor;        // corpus occurrence the replacement came from
  TreePath slot;        // extension: slot path inside replacement/donor
  std::string donor_id;
};

struct Candidate {
  std::string source_id;
  CcgTree tree;
  std::string text;
  std::vector<RecombinationOp> ops;
  std::optional<SbnGraph> sbn;
  std::string sbn_error;  // why semantic splicing failed, if it did
  std::optional<double> pll;
};

class RecombineError : public DataError {
 public:
  enum class Kind { kNoCompatibleSubtree, kNoTemplate, kNoAlignment };

  RecombineError(Kind kind, const std::string& message);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct OpResult {
  CcgTree tree;
  RecombinationOp op;
};

// Replaces one non-root node with a same-category subtree from another
// document. Sites are drawn uniformly among nodes that have a distinct
// replacement; the replacement is drawn proportionally to its number of
// occurrences. Sites nested with any of `blocked` are skipped.
OpResult Substitute(const CcgTree& tree, std::string_view source_id,
                    const SubtreeIndex& index, Rng& rng,
                    std::span<const TreePath> blocked = {});

// Grows one leaf of category C into a template rooted at C from another
// document, with the original leaf in the template's slot.
OpResult Extend(const CcgTree& tree, std::string_view source_id,
                const SubtreeIndex& index, Rng& rng);

// n successful applications of `kind`. Substitution sites never nest with
// earlier ones.
Candidate ApplyIterated(const CcgTree& tree, std::string_view source_id,
                        const SubtreeIndex& index, Rng& rng, OpKind kind, int n,
                        bool capitalize = false);

// Text ----------------------------------------------------------------------

// Joins tokens with single spaces, then attaches punctuation and clitics.
std::string Detokenize(std::span<const std::string> tokens);
// Inverse of Detokenize for plain text: splits off punctuation and clitics.
std::vector<std::string> TokenizeText(std::string_view text);

std::string RealizeText(const CcgTree& tree, bool capitalize = false);

// True when the text starts with an upper-case ASCII letter.
bool StartsUpper(std::string_view text);

// Semantics -----------------------------------------------------------------

struct DocSemantics {
  CcgTree tree;  // anchors point into sbn
  SbnGraph sbn;
};

// Looks up a document's tree and SBN by id; nullptr when unavailable.
using SemanticLookup = std::function<const DocSemantics*(const std::string& id)>;

// Replays the candidate's ops on the source SBN: substitution replaces the
// site's node span with the donor's (when both spans hold the same number
// of nodes, the new nodes inherit the old nodes' edges to the rest of the
// graph), extension inserts the donor template's nodes next to the extended
// leaf's node. Throws RecombineError
// (kNoAlignment) or SpliceError.
SbnGraph SpliceSemantics(const Candidate& candidate, const SemanticLookup& lookup);

// Set generation ------------------------------------------------------------

struct MixEntry {
  OpKind kind = OpKind::kSubstitution;
  int iterations = 1;
  double weight = 1;
};

struct GenerateConfig {
  std::vector<MixEntry> mix;  // empty: DefaultMix()
  size_t target = 0;          // number of unique candidates wanted
  uint64_t seed = 0;
  int workers = 1;
  size_t max_idle_rounds = 3;  // stop after this many rounds without news
  size_t max_rounds = 10000;
  const SemanticLookup* semantics = nullptr;  // splice SBN when set
};

std::vector<MixEntry> DefaultMix();

struct SourceTree {
  std::string id;
  CcgTree tree;
  bool capitalized = false;
};

struct GenerateResult {
  std::vector<Candidate> candidates;
  bool underfull = false;
  size_t rounds = 0;
  size_t attempts = 0;
  size_t failures = 0;  // attempts where no op could be applied
};

// Deterministic in (sources, index, config): every source document draws
// from its own stream seeded by (seed, document id, round). Candidates are
// deduplicated by realized text.
GenerateResult GenerateSet(std::span<const SourceTree> sources, const SubtreeIndex& index,
                           const GenerateConfig& config);

}  // namespace drskit

#endif  // DRSKIT_RECOMBINE_H_
