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

#ifndef DRSKIT_CCG_H_
#define DRSKIT_CCG_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drskit/error.h"

namespace drskit {

enum class Slash { kForward, kBackward };

// A CCG category: atomic (N, NP, S[dcl], ...) or functional result/arg.
// Immutable; copies share structure.
class Category {
 public:
  Category();  // Atomic("N")

  static Category Atomic(std::string name);
  static Category Functional(Category result, Slash slash, Category argument);

  bool is_atomic() const { return rep_->result == nullptr; }
  const std::string& name() const { return rep_->name; }
  const Category& result() const { return *rep_->result; }
  Slash slash() const { return rep_->slash; }
  const Category& argument() const { return *rep_->argument; }

  // Parentheses around every functional sub-category: (S\NP)/NP.
  std::string ToString() const;
  uint64_t Hash() const { return rep_->hash; }

  bool operator==(const Category& other) const;
  bool operator!=(const Category& other) const { return !(*this == other); }

 private:
  struct Rep {
    std::string name;
    std::shared_ptr<const Category> result;
    std::shared_ptr<const Category> argument;
    Slash slash = Slash::kForward;
    uint64_t hash = 0;
  };
  explicit Category(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  std::shared_ptr<const Rep> rep_;
};

struct CategoryHash {
  size_t operator()(const Category& c) const { return static_cast<size_t>(c.Hash()); }
};

class CategoryParseError : public DataError {
 public:
  CategoryParseError(const std::string& message, size_t position);
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// Slashes are left-associative: S\NP/NP == (S\NP)/NP.
Category ParseCategory(std::string_view text);

enum class Rule { kForwardApp, kBackwardApp, kGiven };

const char* RuleName(Rule rule);  // fa, ba, gen

struct Application {
  Category result;
  Rule rule;
};

// (X/Y, Y) -> X by forward application; (Y, X\Y) -> X by backward.
std::optional<Application> CheckApplication(const Category& left, const Category& right);

// Child positions along a root-to-node path: 0 = left, 1 = right.
using TreePath = std::vector<uint8_t>;

// Binary derivation tree. Leaves carry a token and optional anchors (SBN
// node positions of the document the tree came from). `gen` nodes wrap
// combinators other than application (and unary rules); they remember the
// child categories they were attested with.
class CcgTree {
 public:
  // A leaf of category N with an empty token.
  CcgTree();

  static CcgTree Leaf(Category category, std::string token,
                      std::vector<size_t> anchors = {});
  static CcgTree Node(Category category, Rule rule, CcgTree left, CcgTree right);
  // Unary `gen` node (lexical type change, type raising).
  static CcgTree Unary(Category category, CcgTree child);

  bool is_leaf() const { return rep_->left == nullptr; }
  bool is_unary() const { return rep_->left != nullptr && rep_->right == nullptr; }
  const Category& category() const { return rep_->category; }
  Rule rule() const { return rep_->rule; }
  const std::string& token() const { return rep_->token; }
  const std::vector<size_t>& anchors() const { return rep_->anchors; }
  const CcgTree& left() const { return *rep_->left; }
  const CcgTree& right() const { return *rep_->right; }
  size_t child_count() const { return is_leaf() ? 0 : (is_unary() ? 1 : 2); }
  const CcgTree& child(size_t i) const { return i == 0 ? left() : right(); }

  // Categories a gen node was built with.
  const std::vector<Category>& attested() const { return rep_->attested; }

  size_t node_count() const { return rep_->node_count; }
  size_t leaf_count() const { return rep_->leaf_count; }

  std::vector<std::string> Yield() const;

  // Structure only: categories, rules, tokens. Anchors are ignored.
  uint64_t StructuralHash() const { return rep_->hash; }
  bool StructurallyEqual(const CcgTree& other) const;

  // Same tree with every anchor dropped (or rewritten).
  CcgTree WithAnchors(const std::function<std::vector<size_t>(const std::vector<size_t>&)>&
                          remap) const;

  // Copy of this internal node with child `i` swapped; category, rule and
  // attested categories are kept.
  CcgTree WithChild(size_t i, CcgTree child) const;

  // Address of the shared node; identifies a node within one tree.
  const void* identity() const { return rep_.get(); }

 private:
  struct Rep {
    Category category;
    Rule rule = Rule::kGiven;
    std::string token;
    std::vector<size_t> anchors;
    std::shared_ptr<const CcgTree> left;
    std::shared_ptr<const CcgTree> right;
    std::vector<Category> attested;
    size_t node_count = 1;
    size_t leaf_count = 1;
    uint64_t hash = 0;
  };
  explicit CcgTree(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static CcgTree Make(Rep rep);

  std::shared_ptr<const Rep> rep_;
};

class TreeParseError : public DataError {
 public:
  TreeParseError(const std::string& message, size_t position);
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// `(fa CAT left right)`, `(ba CAT left right)`, `(gen CAT child [child])`,
// leaves `(CAT "token" [anchor ...])`.
CcgTree ParseTree(std::string_view text);
std::string SerializeTree(const CcgTree& tree);

struct TypecheckResult {
  bool ok = true;
  std::vector<std::string> failures;  // one line per offending node
};

// Application nodes must satisfy their rule; gen nodes must still have
// the child categories they were attested with.
TypecheckResult TypecheckTree(const CcgTree& tree);

// Path helpers.
const CcgTree& SubtreeAt(const CcgTree& tree, const TreePath& path);
CcgTree ReplaceAt(const CcgTree& tree, const TreePath& path, const CcgTree& replacement);
// Pre-order visit of every node with its path.
void ForEachNode(const CcgTree& tree,
                 const std::function<void(const TreePath&, const CcgTree&)>& fn);
// Half-open token span covered by the node at `path`.
std::pair<size_t, size_t> YieldSpan(const CcgTree& tree, const TreePath& path);
// True when one path is a prefix of the other.
bool PathsNested(const TreePath& a, const TreePath& b);

// Sibling lookup for every binary node: (parent, child) -> other child.
class ChildMap {
 public:
  void Add(const CcgTree& parent, const CcgTree& child, const CcgTree& sibling);
  const CcgTree* Sibling(const CcgTree& parent, const CcgTree& child) const;
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<const void*, const void*>, CcgTree> entries_;
};

ChildMap BuildChildMap(const CcgTree& tree);

}  // namespace drskit

#endif  // DRSKIT_CCG_H_
