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

#include "drskit/ccg.h"

#include <cctype>

#include "drskit/util.h"

namespace drskit {

// Category ----------------------------------------------------------------

Category::Category() : Category(Atomic("N")) {}

Category Category::Atomic(std::string name) {
  auto rep = std::make_shared<Rep>();
  rep->hash = Fnv1a(name, 0x84222325cbf29ce4ULL);
  rep->name = std::move(name);
  return Category(std::move(rep));
}

Category Category::Functional(Category result, Slash slash, Category argument) {
  auto rep = std::make_shared<Rep>();
  rep->slash = slash;
  rep->hash = Mix64(result.Hash() * 31 + (slash == Slash::kForward ? 1 : 2)) ^
              Mix64(argument.Hash() + 0x7f4a7c15ULL);
  rep->result = std::make_shared<const Category>(std::move(result));
  rep->argument = std::make_shared<const Category>(std::move(argument));
  return Category(std::move(rep));
}

bool Category::operator==(const Category& other) const {
  if (rep_ == other.rep_) return true;
  if (rep_->hash != other.rep_->hash) return false;
  if (is_atomic() != other.is_atomic()) return false;
  if (is_atomic()) return rep_->name == other.rep_->name;
  return slash() == other.slash() && result() == other.result() &&
         argument() == other.argument();
}

std::string Category::ToString() const {
  if (is_atomic()) return name();
  auto wrap = [](const Category& c) {
    return c.is_atomic() ? c.ToString() : "(" + c.ToString() + ")";
  };
  return wrap(result()) + (slash() == Slash::kForward ? "/" : "\\") + wrap(argument());
}

CategoryParseError::CategoryParseError(const std::string& message, size_t position)
    : DataError("category syntax error at " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class CategoryParser {
 public:
  explicit CategoryParser(std::string_view text) : text_(text) {}

  Category Parse() {
    if (text_.empty()) throw CategoryParseError("empty category", 0);
    Category c = ParseExpr();
    if (pos_ != text_.size()) throw CategoryParseError("trailing input", pos_);
    return c;
  }

 private:
  // expr := primary (slash primary)*   (left-associative)
  Category ParseExpr() {
    Category left = ParsePrimary();
    while (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '\\')) {
      Slash slash = text_[pos_] == '/' ? Slash::kForward : Slash::kBackward;
      ++pos_;
      Category right = ParsePrimary();
      left = Category::Functional(std::move(left), slash, std::move(right));
    }
    return left;
  }

  Category ParsePrimary() {
    if (pos_ >= text_.size()) throw CategoryParseError("unexpected end", pos_);
    if (text_[pos_] == '(') {
      ++pos_;
      Category inner = ParseExpr();
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        throw CategoryParseError("expected ')'", pos_);
      }
      ++pos_;
      return inner;
    }
    size_t start = pos_;
    int bracket = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '[') {
        ++bracket;
      } else if (c == ']') {
        if (bracket == 0) throw CategoryParseError("unbalanced ']'", pos_);
        --bracket;
      } else if (bracket == 0 && (c == '/' || c == '\\' || c == '(' || c == ')')) {
        break;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        throw CategoryParseError("whitespace in category", pos_);
      }
      ++pos_;
    }
    if (bracket != 0) throw CategoryParseError("unbalanced '['", pos_);
    if (pos_ == start) throw CategoryParseError("expected atomic category", pos_);
    return Category::Atomic(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

Category ParseCategory(std::string_view text) { return CategoryParser(text).Parse(); }

const char* RuleName(Rule rule) {
  switch (rule) {
    case Rule::kForwardApp: return "fa";
    case Rule::kBackwardApp: return "ba";
    case Rule::kGiven: return "gen";
  }
  return "gen";
}

std::optional<Application> CheckApplication(const Category& left, const Category& right) {
  if (!left.is_atomic() && left.slash() == Slash::kForward && left.argument() == right) {
    return Application{left.result(), Rule::kForwardApp};
  }
  if (!right.is_atomic() && right.slash() == Slash::kBackward && right.argument() == left) {
    return Application{right.result(), Rule::kBackwardApp};
  }
  return std::nullopt;
}

// CcgTree -------------------------------------------------------------------

CcgTree CcgTree::Make(Rep rep) {
  uint64_t h = Mix64(rep.category.Hash() + static_cast<uint64_t>(rep.rule) * 0x100);
  if (rep.left == nullptr) {
    h ^= Fnv1a(rep.token);
  } else {
    rep.node_count = 1 + rep.left->node_count();
    rep.leaf_count = rep.left->leaf_count();
    h = Mix64(h ^ rep.left->StructuralHash());
    if (rep.right) {
      rep.node_count += rep.right->node_count();
      rep.leaf_count += rep.right->leaf_count();
      h = Mix64((h + 0x632be59bd9b4e019ULL) ^ rep.right->StructuralHash());
    }
  }
  rep.hash = h;
  return CcgTree(std::make_shared<const Rep>(std::move(rep)));
}

CcgTree::CcgTree() : CcgTree(Leaf(Category(), "")) {}

CcgTree CcgTree::Leaf(Category category, std::string token, std::vector<size_t> anchors) {
  Rep rep;
  rep.category = std::move(category);
  rep.rule = Rule::kGiven;
  rep.token = std::move(token);
  rep.anchors = std::move(anchors);
  return Make(std::move(rep));
}

CcgTree CcgTree::Node(Category category, Rule rule, CcgTree left, CcgTree right) {
  Rep rep;
  rep.category = std::move(category);
  rep.rule = rule;
  if (rule == Rule::kGiven) rep.attested = {left.category(), right.category()};
  rep.left = std::make_shared<const CcgTree>(std::move(left));
  rep.right = std::make_shared<const CcgTree>(std::move(right));
  return Make(std::move(rep));
}

CcgTree CcgTree::Unary(Category category, CcgTree child) {
  Rep rep;
  rep.category = std::move(category);
  rep.rule = Rule::kGiven;
  rep.attested = {child.category()};
  rep.left = std::make_shared<const CcgTree>(std::move(child));
  return Make(std::move(rep));
}

std::vector<std::string> CcgTree::Yield() const {
  std::vector<std::string> out;
  out.reserve(leaf_count());
  std::vector<const CcgTree*> stack{this};
  while (!stack.empty()) {
    const CcgTree* t = stack.back();
    stack.pop_back();
    if (t->is_leaf()) {
      out.push_back(t->token());
      continue;
    }
    if (t->rep_->right) stack.push_back(t->rep_->right.get());
    stack.push_back(t->rep_->left.get());
  }
  return out;
}

bool CcgTree::StructurallyEqual(const CcgTree& other) const {
  if (rep_ == other.rep_) return true;
  if (StructuralHash() != other.StructuralHash()) return false;
  if (rule() != other.rule() || category() != other.category() ||
      child_count() != other.child_count()) {
    return false;
  }
  if (is_leaf()) return token() == other.token();
  for (size_t i = 0; i < child_count(); ++i) {
    if (!child(i).StructurallyEqual(other.child(i))) return false;
  }
  return true;
}

CcgTree CcgTree::WithAnchors(
    const std::function<std::vector<size_t>(const std::vector<size_t>&)>& remap) const {
  if (is_leaf()) return Leaf(category(), token(), remap(anchors()));
  Rep rep = *rep_;
  rep.left = std::make_shared<const CcgTree>(left().WithAnchors(remap));
  if (rep_->right) rep.right = std::make_shared<const CcgTree>(right().WithAnchors(remap));
  return Make(std::move(rep));
}

CcgTree CcgTree::WithChild(size_t i, CcgTree child) const {
  if (i >= child_count()) throw Error("child index out of range");
  Rep rep = *rep_;
  auto shared = std::make_shared<const CcgTree>(std::move(child));
  if (i == 0) {
    rep.left = std::move(shared);
  } else {
    rep.right = std::move(shared);
  }
  return Make(std::move(rep));
}

// Serialization -------------------------------------------------------------

TreeParseError::TreeParseError(const std::string& message, size_t position)
    : DataError("tree syntax error at " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  CcgTree Parse() {
    SkipSpace();
    CcgTree t = ParseNode();
    SkipSpace();
    if (pos_ != text_.size()) throw TreeParseError("trailing input", pos_);
    return t;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void Expect(char c) {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw TreeParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  // A whitespace-free word whose parentheses balance (categories contain
  // parentheses). Stops at a ')' that would close the enclosing node.
  std::string ReadWord() {
    SkipSpace();
    size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) break;
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    if (pos_ == start) throw TreeParseError("expected a word", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string ReadQuoted() {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != '"') {
      throw TreeParseError("expected quoted token", pos_);
    }
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) throw TreeParseError("unterminated token", pos_);
    ++pos_;
    return out;
  }

  Category ReadCategory() {
    size_t at = pos_;
    std::string word = ReadWord();
    try {
      return ParseCategory(word);
    } catch (const CategoryParseError& e) {
      throw TreeParseError(e.what(), at);
    }
  }

  CcgTree ParseNode() {
    Expect('(');
    SkipSpace();
    size_t save = pos_;
    std::string head = ReadWord();
    std::optional<Rule> rule;
    if (head == "fa") rule = Rule::kForwardApp;
    if (head == "ba") rule = Rule::kBackwardApp;
    if (head == "gen") rule = Rule::kGiven;
    if (!rule) {
      pos_ = save;
      Category cat = ReadCategory();
      std::string token = ReadQuoted();
      std::vector<size_t> anchors;
      for (;;) {
        SkipSpace();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          size_t start = pos_;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
          }
          anchors.push_back(std::stoul(std::string(text_.substr(start, pos_ - start))));
          continue;
        }
        break;
      }
      Expect(')');
      return CcgTree::Leaf(std::move(cat), std::move(token), std::move(anchors));
    }
    Category cat = ReadCategory();
    CcgTree left = ParseNode();
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == ')') {
      if (*rule != Rule::kGiven) throw TreeParseError("application needs two children", pos_);
      ++pos_;
      return CcgTree::Unary(std::move(cat), std::move(left));
    }
    CcgTree right = ParseNode();
    Expect(')');
    return CcgTree::Node(std::move(cat), *rule, std::move(left), std::move(right));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void Serialize(const CcgTree& t, std::string& out) {
  out += '(';
  if (t.is_leaf()) {
    out += t.category().ToString();
    out += " \"";
    for (char c : t.token()) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
    for (size_t a : t.anchors()) {
      out += ' ';
      out += std::to_string(a);
    }
    out += ')';
    return;
  }
  out += RuleName(t.rule());
  out += ' ';
  out += t.category().ToString();
  for (size_t i = 0; i < t.child_count(); ++i) {
    out += ' ';
    Serialize(t.child(i), out);
  }
  out += ')';
}

void Typecheck(const CcgTree& t, TypecheckResult& result) {
  if (t.is_leaf()) return;
  for (size_t i = 0; i < t.child_count(); ++i) Typecheck(t.child(i), result);
  auto fail = [&](const std::string& why) {
    result.ok = false;
    result.failures.push_back(std::string(RuleName(t.rule())) + " " +
                              t.category().ToString() + ": " + why);
  };
  if (t.rule() == Rule::kGiven) {
    const auto& attested = t.attested();
    if (attested.size() != t.child_count()) {
      fail("child count differs from attested");
      return;
    }
    for (size_t i = 0; i < attested.size(); ++i) {
      if (attested[i] != t.child(i).category()) {
        fail("child " + std::to_string(i) + " is " + t.child(i).category().ToString() +
             ", attested " + attested[i].ToString());
      }
    }
    return;
  }
  if (t.is_unary()) {
    fail("application node with one child");
    return;
  }
  auto app = CheckApplication(t.left().category(), t.right().category());
  if (!app || app->rule != t.rule() || app->result != t.category()) {
    // Both rules can apply to the same pair, e.g. (X/Y, Y\(X/Y)).
    bool ok = false;
    if (t.rule() == Rule::kForwardApp) {
      const Category& l = t.left().category();
      ok = !l.is_atomic() && l.slash() == Slash::kForward &&
           l.argument() == t.right().category() && l.result() == t.category();
    } else {
      const Category& r = t.right().category();
      ok = !r.is_atomic() && r.slash() == Slash::kBackward &&
           r.argument() == t.left().category() && r.result() == t.category();
    }
    if (!ok) {
      fail("children " + t.left().category().ToString() + " " +
           t.right().category().ToString() + " do not combine");
    }
  }
}

void Visit(const CcgTree& t, TreePath& path,
           const std::function<void(const TreePath&, const CcgTree&)>& fn) {
  fn(path, t);
  for (size_t i = 0; i < t.child_count(); ++i) {
    path.push_back(static_cast<uint8_t>(i));
    Visit(t.child(i), path, fn);
    path.pop_back();
  }
}

void FillChildMap(const CcgTree& t, ChildMap& map) {
  if (t.child_count() == 2) {
    map.Add(t, t.left(), t.right());
    map.Add(t, t.right(), t.left());
  }
  for (size_t i = 0; i < t.child_count(); ++i) FillChildMap(t.child(i), map);
}

}  // namespace

CcgTree ParseTree(std::string_view text) { return TreeParser(text).Parse(); }

std::string SerializeTree(const CcgTree& tree) {
  std::string out;
  Serialize(tree, out);
  return out;
}

TypecheckResult TypecheckTree(const CcgTree& tree) {
  TypecheckResult result;
  Typecheck(tree, result);
  return result;
}

const CcgTree& SubtreeAt(const CcgTree& tree, const TreePath& path) {
  const CcgTree* t = &tree;
  for (uint8_t step : path) {
    if (step >= t->child_count()) throw Error("tree path out of range");
    t = &t->child(step);
  }
  return *t;
}

namespace {

CcgTree ReplaceFrom(const CcgTree& t, const TreePath& path, size_t depth,
                    const CcgTree& replacement) {
  if (depth == path.size()) return replacement;
  uint8_t step = path[depth];
  if (step >= t.child_count()) throw Error("tree path out of range");
  return t.WithChild(step, ReplaceFrom(t.child(step), path, depth + 1, replacement));
}

}  // namespace

CcgTree ReplaceAt(const CcgTree& tree, const TreePath& path, const CcgTree& replacement) {
  return ReplaceFrom(tree, path, 0, replacement);
}

void ForEachNode(const CcgTree& tree,
                 const std::function<void(const TreePath&, const CcgTree&)>& fn) {
  TreePath path;
  Visit(tree, path, fn);
}

std::pair<size_t, size_t> YieldSpan(const CcgTree& tree, const TreePath& path) {
  size_t begin = 0;
  const CcgTree* t = &tree;
  for (uint8_t step : path) {
    if (step >= t->child_count()) throw Error("tree path out of range");
    if (step == 1) begin += t->left().leaf_count();
    t = &t->child(step);
  }
  return {begin, begin + t->leaf_count()};
}

bool PathsNested(const TreePath& a, const TreePath& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

void ChildMap::Add(const CcgTree& parent, const CcgTree& child, const CcgTree& sibling) {
  entries_.insert_or_assign({parent.identity(), child.identity()}, sibling);
}

const CcgTree* ChildMap::Sibling(const CcgTree& parent, const CcgTree& child) const {
  auto it = entries_.find({parent.identity(), child.identity()});
  return it == entries_.end() ? nullptr : &it->second;
}

ChildMap BuildChildMap(const CcgTree& tree) {
  ChildMap map;
  FillChildMap(tree, map);
  return map;
}

}  // namespace drskit
