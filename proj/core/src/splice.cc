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

#include <string>

#include "drskit/sbn.h"

namespace drskit {

SpliceError::SpliceError(Kind kind, const std::string& message)
    : DataError(message), kind_(kind) {}

SbnFragment SbnFragment::FromGraph(const SbnGraph& graph) {
  SbnFragment fragment;
  fragment.nodes = graph.nodes();
  return fragment;
}

SpliceResult SpliceSbnDetailed(const SbnGraph& host, NodeSpan span,
                               const SbnFragment& fragment, SpliceMode mode) {
  const auto& hnodes = host.nodes();
  if (span.begin > span.end || span.end > hnodes.size()) {
    throw SpliceError(SpliceError::Kind::kInvalidSpan, "span outside host");
  }
  if (mode == SpliceMode::kInsert && span.begin != span.end) {
    throw SpliceError(SpliceError::Kind::kInvalidSpan, "insert needs an empty span");
  }
  for (size_t i = span.begin; i < span.end; ++i) {
    if (hnodes[i].is_relation()) {
      throw SpliceError(SpliceError::Kind::kInvalidSpan,
                        "span covers a discourse relation at node " + std::to_string(i));
    }
  }
  const size_t frag_entities = fragment.nodes.size();
  for (const SbnNode& node : fragment.nodes) {
    if (node.is_relation()) {
      throw SpliceError(SpliceError::Kind::kInvalidFragment,
                        "fragment contains a discourse relation");
    }
  }
  for (size_t f = 0; f < fragment.nodes.size(); ++f) {
    for (const SbnEdge& edge : fragment.nodes[f].edges) {
      if (const auto* off = std::get_if<NodeOffset>(&edge.target)) {
        long t = static_cast<long>(f) + off->offset;
        if (off->offset == 0 || t < 0 || t >= static_cast<long>(frag_entities)) {
          throw SpliceError(SpliceError::Kind::kInvalidFragment,
                            "fragment edge leaves the fragment: " + edge.label);
        }
      }
    }
  }
  for (const BoundaryEdge& b : fragment.boundary) {
    if (b.fragment_entity >= frag_entities || b.host_entity >= host.entity_count()) {
      throw SpliceError(SpliceError::Kind::kInvalidFragment, "boundary edge out of range");
    }
  }

  // Entity numbering of the span in the host.
  size_t span_entity_begin = 0;
  for (size_t i = 0; i < span.begin; ++i) {
    if (!hnodes[i].is_relation()) ++span_entity_begin;
  }
  const size_t span_entities = span.size();  // the span holds entities only
  const bool removed = mode == SpliceMode::kReplace;
  const size_t cut_end = removed ? span.end : span.begin;

  SpliceResult result{SbnGraph(), {}, span.begin};
  result.host_node_map.assign(hnodes.size(), std::nullopt);

  // New entity ordinal of every host entity; -1 when replaced.
  std::vector<long> entity_map(host.entity_count(), -1);
  {
    long next = 0;
    size_t pos = 0;
    for (size_t i = 0; i < span.begin; ++i, ++pos) {
      result.host_node_map[i] = pos;
      if (!hnodes[i].is_relation()) entity_map[*host.entity_of(i)] = next++;
    }
    next += static_cast<long>(frag_entities);
    pos += fragment.nodes.size();
    for (size_t i = cut_end; i < hnodes.size(); ++i, ++pos) {
      result.host_node_map[i] = pos;
      if (!hnodes[i].is_relation()) entity_map[*host.entity_of(i)] = next++;
    }
  }
  const long frag_entity_begin = static_cast<long>(span_entity_begin);

  auto rebind = [&](size_t host_entity, const std::string& what) -> long {
    long mapped = entity_map[host_entity];
    if (mapped >= 0) return mapped;
    if (span_entities == frag_entities) {
      return frag_entity_begin + static_cast<long>(host_entity - span_entity_begin);
    }
    throw SpliceError(SpliceError::Kind::kCrossingEdge,
                      "edge " + what + " enters the replaced span");
  };

  std::vector<SbnNode> out;
  out.reserve(hnodes.size() + fragment.nodes.size());
  auto copy_host = [&](size_t i) {
    SbnNode node = hnodes[i];
    if (!node.is_relation()) {
      long self = entity_map[*host.entity_of(i)];
      for (SbnEdge& edge : node.edges) {
        if (auto* off = std::get_if<NodeOffset>(&edge.target)) {
          size_t target = *host.entity_of(host.ResolveNode(i, *off));
          long mapped = rebind(target, edge.label + " " + FormatTarget(edge.target) +
                                           " at node " + std::to_string(i));
          off->offset = static_cast<int>(mapped - self);
        }
      }
    }
    out.push_back(std::move(node));
  };

  for (size_t i = 0; i < span.begin; ++i) copy_host(i);
  for (size_t f = 0; f < fragment.nodes.size(); ++f) {
    SbnNode node = fragment.nodes[f];
    for (const BoundaryEdge& b : fragment.boundary) {
      if (b.fragment_entity != f) continue;
      long self = frag_entity_begin + static_cast<long>(f);
      long mapped = entity_map[b.host_entity];
      if (mapped < 0) {
        throw SpliceError(SpliceError::Kind::kCrossingEdge,
                          "boundary edge " + b.label + " targets the replaced span");
      }
      node.edges.push_back({b.label, NodeOffset{static_cast<int>(mapped - self)}});
    }
    out.push_back(std::move(node));
  }
  for (size_t i = cut_end; i < hnodes.size(); ++i) copy_host(i);

  try {
    result.graph = SbnGraph::FromNodes(std::move(out));
  } catch (const IllFormedSbn& e) {
    throw SpliceError(SpliceError::Kind::kInvalidFragment,
                      std::string("splice result is ill-formed: ") + e.what());
  }
  return result;
}

SbnGraph SpliceSbn(const SbnGraph& host, NodeSpan span, const SbnFragment& fragment,
                   SpliceMode mode) {
  return SpliceSbnDetailed(host, span, fragment, mode).graph;
}

}  // namespace drskit
