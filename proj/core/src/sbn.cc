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

#include "drskit/sbn.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

namespace drskit {
namespace {

struct Token {
  std::string text;
  bool quoted = false;
};

bool IsDigits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Splits one line into tokens. `%` outside quotes ends the line; a quoted
// token may contain spaces.
std::vector<Token> Tokenize(std::string_view line, size_t lineno) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '%') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '"') {
      size_t close = line.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw IllFormedSbn("unterminated quoted constant", lineno);
      }
      tokens.push_back({std::string(line.substr(i + 1, close - i - 1)), true});
      i = close + 1;
      if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '%' &&
          line[i] != '\r') {
        throw IllFormedSbn("text directly after quoted constant", lineno);
      }
      continue;
    }
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '%' &&
           line[i] != '\r') {
      if (line[i] == '"') throw IllFormedSbn("stray quote", lineno);
      ++i;
    }
    tokens.push_back({std::string(line.substr(start, i - start)), false});
  }
  return tokens;
}

std::optional<Synset> ParseSynset(std::string_view s) {
  // lemma.p.NN
  if (s.size() < 6) return std::nullopt;
  std::string_view sense = s.substr(s.size() - 2);
  if (!IsDigits(sense) || s[s.size() - 3] != '.') return std::nullopt;
  char pos = s[s.size() - 4];
  if (pos != 'n' && pos != 'v' && pos != 'a' && pos != 'r') return std::nullopt;
  if (s[s.size() - 5] != '.') return std::nullopt;
  std::string_view lemma = s.substr(0, s.size() - 5);
  if (lemma.empty()) return std::nullopt;
  Synset synset;
  synset.lemma = std::string(lemma);
  synset.pos = pos;
  synset.sense = (sense[0] - '0') * 10 + (sense[1] - '0');
  return synset;
}

bool IsRelationName(std::string_view s) {
  if (s.empty() || !(s[0] >= 'A' && s[0] <= 'Z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

bool IsBareConstant(std::string_view s) {
  if (s == "now" || s == "speaker" || s == "hearer") return true;
  if (IsDigits(s)) return true;
  size_t dot = s.find('.');
  return dot != std::string_view::npos && IsDigits(s.substr(0, dot)) &&
         IsDigits(s.substr(dot + 1));
}

// Classifies a token as an edge target. Throws for a zero node offset.
std::optional<EdgeTarget> ParseTarget(const Token& tok, size_t lineno) {
  if (tok.quoted) return Constant{tok.text, true};
  std::string_view s = tok.text;
  if (s.size() >= 2 && (s[0] == '+' || s[0] == '-') && IsDigits(s.substr(1))) {
    long v = std::stol(std::string(s.substr(1)));
    if (v == 0) throw IllFormedSbn("zero node offset", lineno);
    if (v > 1000000) throw IllFormedSbn("node offset out of range", lineno);
    return NodeOffset{static_cast<int>(s[0] == '-' ? -v : v)};
  }
  if (s.size() >= 2 && (s[0] == '<' || s[0] == '>') && IsDigits(s.substr(1))) {
    long v = std::stol(std::string(s.substr(1)));
    if (v > 1000000) throw IllFormedSbn("box offset out of range", lineno);
    return BoxOffset{s[0] == '<' ? BoxDirection::kBefore : BoxDirection::kAfter,
                     static_cast<int>(v)};
  }
  if (IsBareConstant(s)) return Constant{std::string(s), false};
  return std::nullopt;
}

SbnNode ParseLine(const std::vector<Token>& tokens, size_t lineno) {
  const Token& head = tokens.front();
  SbnNode node;
  if (head.quoted) throw IllFormedSbn("quoted head", lineno);
  if (auto synset = ParseSynset(head.text)) {
    node.head = std::move(*synset);
    for (size_t i = 1; i < tokens.size(); i += 2) {
      const Token& label = tokens[i];
      if (label.quoted || ParseTarget(label, lineno)) {
        throw IllFormedSbn("target without role label: " + label.text, lineno);
      }
      if (i + 1 >= tokens.size()) {
        throw IllFormedSbn("edge lacks a target: " + label.text, lineno);
      }
      auto target = ParseTarget(tokens[i + 1], lineno);
      if (!target) {
        throw IllFormedSbn("edge lacks a target: " + label.text + " " + tokens[i + 1].text,
                           lineno);
      }
      node.edges.push_back({label.text, std::move(*target)});
    }
    return node;
  }
  if (IsRelationName(head.text)) {
    node.head = DiscourseRelation{head.text};
    if (tokens.size() < 2) throw IllFormedSbn("discourse relation without box", lineno);
    for (size_t i = 1; i < tokens.size(); ++i) {
      auto target = ParseTarget(tokens[i], lineno);
      if (!target || !std::holds_alternative<BoxOffset>(*target)) {
        throw IllFormedSbn("discourse relation expects box offsets: " + tokens[i].text,
                           lineno);
      }
      node.edges.push_back({"", std::move(*target)});
    }
    return node;
  }
  throw IllFormedSbn("illegal head: " + head.text, lineno);
}

}  // namespace

IllFormedSbn::IllFormedSbn(std::string reason, size_t line)
    : DataError("ill-formed SBN at line " + std::to_string(line) + ": " + reason),
      reason_(std::move(reason)),
      line_(line) {}

std::optional<size_t> SbnGraph::entity_of(size_t node) const {
  long e = entity_of_[node];
  if (e < 0) return std::nullopt;
  return static_cast<size_t>(e);
}

size_t SbnGraph::ResolveNode(size_t node, const NodeOffset& target) const {
  long entity = entity_of_[node] + target.offset;
  return entity_nodes_[static_cast<size_t>(entity)];
}

size_t SbnGraph::ResolveBox(size_t node, const BoxOffset& target) const {
  long box = static_cast<long>(box_of_[node]) +
             (target.direction == BoxDirection::kBefore ? -target.magnitude
                                                        : target.magnitude);
  return static_cast<size_t>(box);
}

SbnGraph SbnGraph::FromNodes(std::vector<SbnNode> nodes) {
  if (nodes.empty()) throw IllFormedSbn("no nodes", 1);
  std::vector<size_t> lines(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) lines[i] = i + 1;

  SbnGraph g;
  g.box_of_.resize(nodes.size());
  g.entity_of_.resize(nodes.size());
  size_t box = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_relation()) {
      ++box;
      g.entity_of_[i] = -1;
    } else {
      g.entity_of_[i] = static_cast<long>(g.entity_nodes_.size());
      g.entity_nodes_.push_back(i);
    }
    g.box_of_[i] = box;
  }
  g.box_count_ = box + 1;

  const long entities = static_cast<long>(g.entity_nodes_.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    const SbnNode& node = nodes[i];
    if (const auto* s = std::get_if<Synset>(&node.head)) {
      if (s->lemma.empty() || s->sense < 0 || s->sense > 99 ||
          std::string_view("nvar").find(s->pos) == std::string_view::npos) {
        throw IllFormedSbn("illegal synset head", lines[i]);
      }
    } else {
      const auto& rel = std::get<DiscourseRelation>(node.head);
      if (!IsRelationName(rel.name)) throw IllFormedSbn("illegal relation name", lines[i]);
      if (node.edges.empty()) throw IllFormedSbn("discourse relation without box", lines[i]);
    }
    for (const SbnEdge& edge : node.edges) {
      if (node.is_relation() && !std::holds_alternative<BoxOffset>(edge.target)) {
        throw IllFormedSbn("discourse relation expects box offsets", lines[i]);
      }
      if (!node.is_relation() && edge.label.empty()) {
        throw IllFormedSbn("edge without label", lines[i]);
      }
      if (const auto* off = std::get_if<NodeOffset>(&edge.target)) {
        if (off->offset == 0) throw IllFormedSbn("zero node offset", lines[i]);
        long target = g.entity_of_[i] + off->offset;
        if (target < 0 || target >= entities) {
          throw IllFormedSbn("node offset " + FormatTarget(edge.target) + " out of range",
                             lines[i]);
        }
      } else if (const auto* b = std::get_if<BoxOffset>(&edge.target)) {
        if (b->magnitude < 0) throw IllFormedSbn("negative box magnitude", lines[i]);
        long target = static_cast<long>(g.box_of_[i]) +
                      (b->direction == BoxDirection::kBefore ? -b->magnitude : b->magnitude);
        if (target < 0 || target >= static_cast<long>(g.box_count_)) {
          throw IllFormedSbn("box offset " + FormatTarget(edge.target) + " out of range",
                             lines[i]);
        }
      }
    }
  }
  g.nodes_ = std::move(nodes);
  return g;
}

SbnGraph ParseSbn(std::string_view source) {
  std::vector<SbnNode> nodes;
  std::vector<size_t> lines;
  size_t lineno = 0;
  size_t pos = 0;
  while (pos <= source.size()) {
    size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    ++lineno;
    std::vector<Token> tokens = Tokenize(source.substr(pos, eol - pos), lineno);
    if (!tokens.empty()) {
      nodes.push_back(ParseLine(tokens, lineno));
      lines.push_back(lineno);
    }
    pos = eol + 1;
  }
  if (nodes.empty()) throw IllFormedSbn("no nodes", 1);
  try {
    return SbnGraph::FromNodes(std::move(nodes));
  } catch (const IllFormedSbn& e) {
    // Map node position back to the source line.
    size_t node = e.line() - 1;
    throw IllFormedSbn(e.reason(), node < lines.size() ? lines[node] : e.line());
  }
}

std::optional<SbnGraph> TryParseSbn(std::string_view source, std::string* error) {
  try {
    return ParseSbn(source);
  } catch (const IllFormedSbn& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

std::string FormatHead(const SbnHead& head) {
  if (const auto* s = std::get_if<Synset>(&head)) {
    char sense[8];
    std::snprintf(sense, sizeof(sense), "%02d", s->sense);
    return s->lemma + "." + s->pos + "." + sense;
  }
  return std::get<DiscourseRelation>(head).name;
}

std::string FormatTarget(const EdgeTarget& target) {
  if (const auto* n = std::get_if<NodeOffset>(&target)) {
    return (n->offset > 0 ? "+" : "-") + std::to_string(n->offset > 0 ? n->offset : -n->offset);
  }
  if (const auto* b = std::get_if<BoxOffset>(&target)) {
    return (b->direction == BoxDirection::kBefore ? "<" : ">") + std::to_string(b->magnitude);
  }
  const auto& c = std::get<Constant>(target);
  return c.quoted ? "\"" + c.value + "\"" : c.value;
}

std::string SerializeSbn(const SbnGraph& graph) {
  std::string out;
  for (const SbnNode& node : graph.nodes()) {
    out += FormatHead(node.head);
    for (const SbnEdge& edge : node.edges) {
      if (!edge.label.empty()) {
        out += ' ';
        out += edge.label;
      }
      out += ' ';
      out += FormatTarget(edge.target);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> TripleSet::Variables() const {
  std::set<std::string> vars;
  for (const Triple& t : triples) {
    vars.insert(t.source);
    if (!t.target_is_constant) vars.insert(t.target);
  }
  return {vars.begin(), vars.end()};
}

TripleSet ToTriples(const SbnGraph& graph) {
  auto entity_var = [](size_t e) { return "x" + std::to_string(e); };
  auto box_var = [](size_t b) { return "b" + std::to_string(b); };

  TripleSet set;
  const auto& nodes = graph.nodes();
  for (size_t i = 0; i < nodes.size(); ++i) {
    const SbnNode& node = nodes[i];
    if (node.is_relation()) {
      const std::string& name = std::get<DiscourseRelation>(node.head).name;
      for (const SbnEdge& edge : node.edges) {
        size_t target = graph.ResolveBox(i, std::get<BoxOffset>(edge.target));
        set.triples.push_back({box_var(target), name, box_var(graph.box_of(i)), false});
      }
      continue;
    }
    std::string var = entity_var(*graph.entity_of(i));
    set.triples.push_back({var, kInstanceRelation, FormatHead(node.head), true});
    set.triples.push_back({box_var(graph.box_of(i)), kMemberRelation, var, false});
    for (const SbnEdge& edge : node.edges) {
      if (const auto* off = std::get_if<NodeOffset>(&edge.target)) {
        size_t target = graph.ResolveNode(i, *off);
        set.triples.push_back({var, edge.label, entity_var(*graph.entity_of(target)), false});
      } else if (const auto* b = std::get_if<BoxOffset>(&edge.target)) {
        set.triples.push_back({var, edge.label, box_var(graph.ResolveBox(i, *b)), false});
      } else {
        const auto& c = std::get<Constant>(edge.target);
        set.triples.push_back({var, edge.label, FormatTarget(c), true});
      }
    }
  }
  std::sort(set.triples.begin(), set.triples.end());
  set.triples.erase(std::unique(set.triples.begin(), set.triples.end()), set.triples.end());
  return set;
}

}  // namespace drskit
