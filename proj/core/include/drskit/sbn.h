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

#ifndef DRSKIT_SBN_H_
#define DRSKIT_SBN_H_

// Sequence Box Notation: one node per line, `%` comments, a head token
// followed by (label, target) pairs. Discourse-relation lines such as
// `NEGATION <1` open a new box and point at other boxes.
//
// Node offsets (`-1`, `+2`) count entity lines only; discourse-relation
// lines are skipped when counting. Box offsets (`<1`, `>1`) are relative to
// the box a line belongs to, where a discourse-relation line belongs to the
// box it opens.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "drskit/error.h"

namespace drskit {

struct Synset {
  std::string lemma;
  char pos = 'n';  // one of n, v, a, r
  int sense = 1;   // printed as two digits

  bool operator==(const Synset&) const = default;
};

struct DiscourseRelation {
  std::string name;  // upper-case identifier, e.g. NEGATION

  bool operator==(const DiscourseRelation&) const = default;
};

using SbnHead = std::variant<Synset, DiscourseRelation>;

struct NodeOffset {
  int offset = 0;  // non-zero, relative to the source entity

  bool operator==(const NodeOffset&) const = default;
};

enum class BoxDirection { kBefore, kAfter };  // `<` and `>`

struct BoxOffset {
  BoxDirection direction = BoxDirection::kBefore;
  int magnitude = 0;

  bool operator==(const BoxOffset&) const = default;
};

struct Constant {
  std::string value;  // without quotes
  bool quoted = false;

  bool operator==(const Constant&) const = default;
};

using EdgeTarget = std::variant<NodeOffset, BoxOffset, Constant>;

// On discourse-relation nodes the label is empty and the target is a box.
struct SbnEdge {
  std::string label;
  EdgeTarget target;

  bool operator==(const SbnEdge&) const = default;
};

struct SbnNode {
  SbnHead head;
  std::vector<SbnEdge> edges;

  bool is_relation() const {
    return std::holds_alternative<DiscourseRelation>(head);
  }
  bool operator==(const SbnNode&) const = default;
};

// Structural failure of an SBN source. `line` is 1-based (source line for
// parsed text, node position + 1 for graphs assembled from nodes).
class IllFormedSbn : public DataError {
 public:
  IllFormedSbn(std::string reason, size_t line);

  const std::string& reason() const { return reason_; }
  size_t line() const { return line_; }

 private:
  std::string reason_;
  size_t line_;
};

// A validated SBN graph: every offset resolves and box 0 exists.
class SbnGraph {
 public:
  // Validates and indexes `nodes`; throws IllFormedSbn.
  static SbnGraph FromNodes(std::vector<SbnNode> nodes);

  const std::vector<SbnNode>& nodes() const { return nodes_; }
  size_t size() const { return nodes_.size(); }

  size_t box_count() const { return box_count_; }
  size_t entity_count() const { return entity_nodes_.size(); }

  // Box that node `node` belongs to.
  size_t box_of(size_t node) const { return box_of_[node]; }
  // Entity ordinal of a synset node; nullopt for discourse relations.
  std::optional<size_t> entity_of(size_t node) const;
  size_t node_of_entity(size_t entity) const { return entity_nodes_[entity]; }

  // Node index a node-offset edge on `node` points at.
  size_t ResolveNode(size_t node, const NodeOffset& target) const;
  size_t ResolveBox(size_t node, const BoxOffset& target) const;

  bool operator==(const SbnGraph& other) const { return nodes_ == other.nodes_; }

 private:
  std::vector<SbnNode> nodes_;
  std::vector<size_t> box_of_;
  std::vector<long> entity_of_;  // -1 for relations
  std::vector<size_t> entity_nodes_;
  size_t box_count_ = 1;
};

SbnGraph ParseSbn(std::string_view source);

// Non-throwing variant; fills `error` with the failure reason.
std::optional<SbnGraph> TryParseSbn(std::string_view source,
                                    std::string* error = nullptr);

std::string FormatHead(const SbnHead& head);
std::string FormatTarget(const EdgeTarget& target);

// Canonical text: single spaces, no comments, LF after every line.
std::string SerializeSbn(const SbnGraph& graph);

// Variable-labelled triples. Entities become x0, x1, ... and boxes b0, b1,
// ... Relations: "instance" (entity to head), "member" (box to entity),
// role labels, and discourse-relation names between boxes.
struct Triple {
  std::string source;
  std::string relation;
  std::string target;
  bool target_is_constant = false;

  auto operator<=>(const Triple&) const = default;
};

struct TripleSet {
  std::vector<Triple> triples;  // sorted, unique

  std::vector<std::string> Variables() const;
  size_t size() const { return triples.size(); }
  bool operator==(const TripleSet&) const = default;
};

inline constexpr const char* kInstanceRelation = "instance";
inline constexpr const char* kMemberRelation = "member";

TripleSet ToTriples(const SbnGraph& graph);

// Splicing -----------------------------------------------------------------

enum class SpliceMode { kReplace, kInsert };

// Half-open range of node positions.
struct NodeSpan {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
};

// Edge from a fragment entity to a host entity (host numbering before the
// splice). Rebased like any other host-targeting edge.
struct BoundaryEdge {
  size_t fragment_entity = 0;
  std::string label;
  size_t host_entity = 0;
};

// Entity nodes to splice into a host. Node offsets inside `nodes` are
// relative within the fragment; edges into the host go in `boundary`.
struct SbnFragment {
  std::vector<SbnNode> nodes;
  std::vector<BoundaryEdge> boundary;

  static SbnFragment FromGraph(const SbnGraph& graph);
};

class SpliceError : public DataError {
 public:
  enum class Kind { kCrossingEdge, kInvalidSpan, kInvalidFragment };

  SpliceError(Kind kind, const std::string& message);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SpliceResult {
  SbnGraph graph;
  // New position of every host node; nullopt for replaced nodes.
  std::vector<std::optional<size_t>> host_node_map;
  size_t fragment_begin = 0;  // position of the first fragment node
};

// Replaces (or, with kInsert and an empty span, inserts before span.begin)
// host nodes with the fragment. Host edges that do not cross the span keep
// pointing at the same nodes. A host edge into a replaced span is rebound
// positionally when span and fragment hold the same number of entities;
// otherwise SpliceError(kCrossingEdge).
SpliceResult SpliceSbnDetailed(const SbnGraph& host, NodeSpan span,
                               const SbnFragment& fragment, SpliceMode mode);

SbnGraph SpliceSbn(const SbnGraph& host, NodeSpan span,
                   const SbnFragment& fragment, SpliceMode mode);

}  // namespace drskit

#endif  // DRSKIT_SBN_H_
