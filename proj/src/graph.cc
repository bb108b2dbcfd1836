/*
 * Copyright 2026 The PatSTEG Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "patsteg/graph.hpp"

#include <algorithm>
#include <numeric>

#include "patsteg/error.hpp"

namespace patsteg {

std::optional<NodeIndex> CitationGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex CitationGraph::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found) throw DomainError("unknown node id '" + std::string(id) + "'");
  return *found;
}

std::span<const NodeIndex> CitationGraph::out_neighbors(NodeIndex i) const {
  return {out_targets_.data() + out_offsets_.at(i), out_targets_.data() + out_offsets_.at(i + 1)};
}

std::span<const NodeIndex> CitationGraph::in_neighbors(NodeIndex j) const {
  return {in_sources_.data() + in_offsets_.at(j), in_sources_.data() + in_offsets_.at(j + 1)};
}

bool CitationGraph::has_edge(NodeIndex i, NodeIndex j) const {
  if (i >= num_nodes() || j >= num_nodes()) return false;
  auto out = out_neighbors(i);
  return std::binary_search(out.begin(), out.end(), j);
}

std::optional<Timestamp> CitationGraph::edge_time(NodeIndex i, NodeIndex j) const {
  if (!timed() || i >= num_nodes()) return std::nullopt;
  auto out = out_neighbors(i);
  auto it = std::lower_bound(out.begin(), out.end(), j);
  if (it == out.end() || *it != j) return std::nullopt;
  const std::size_t slot = out_offsets_[i] + static_cast<std::size_t>(it - out.begin());
  return times_[out_edge_ids_[slot]];
}

void CitationGraph::finalize() {
  const std::size_t n = ids_.size();
  const std::size_t m = edges_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    if (e.source == e.target) throw DataError("self-loop on node " + ids_[e.source]);
    ++out_offsets_[e.source + 1];
    ++in_offsets_[e.target + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges_[a] < edges_[b]; });
  out_targets_.resize(m);
  out_edge_ids_.resize(m);
  for (std::size_t s = 0; s < m; ++s) {
    const auto& e = edges_[order[s]];
    if (s > 0 && edges_[order[s - 1]] == e) {
      throw DataError("duplicate edge " + ids_[e.source] + " -> " + ids_[e.target]);
    }
    out_targets_[s] = e.target;
    out_edge_ids_[s] = order[s];
  }

  in_sources_.resize(m);
  std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  // Walking edges in (source, target) order leaves each in-list sorted.
  for (std::size_t s = 0; s < m; ++s) {
    const auto& e = edges_[order[s]];
    in_sources_[cursor[e.target]++] = e.source;
  }
}

CitationGraph build_graph(std::span<const EdgeRecord> edges) {
  if (edges.empty()) throw DataError("cannot build a graph from an empty edge list");
  CitationGraph g;
  const bool timed = edges.front().time.has_value();
  auto intern = [&g](const std::string& id) -> NodeIndex {
    auto [it, inserted] = g.index_.try_emplace(id, static_cast<NodeIndex>(g.ids_.size()));
    if (inserted) g.ids_.push_back(id);
    return it->second;
  };
  g.edges_.reserve(edges.size());
  for (const auto& rec : edges) {
    if (rec.source.empty() || rec.target.empty()) throw DataError("empty node id in edge list");
    if (rec.time.has_value() != timed) {
      throw DataError("edge list mixes timed and untimed edges");
    }
    const NodeIndex s = intern(rec.source);
    const NodeIndex t = intern(rec.target);
    g.edges_.push_back({s, t});
    if (timed) g.times_.push_back(*rec.time);
  }
  g.finalize();
  return g;
}

CitationGraph build_graph_from_pairs(std::size_t num_nodes, std::span<const NodePair> edges,
                                     std::span<const Timestamp> times) {
  if (num_nodes == 0) throw DataError("graph needs at least one node");
  if (!times.empty() && times.size() != edges.size()) {
    throw DataError("edge times must align with edges");
  }
  CitationGraph g;
  g.ids_.reserve(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) {
    g.ids_.push_back(std::to_string(i));
    g.index_.emplace(g.ids_.back(), static_cast<NodeIndex>(i));
  }
  for (const auto& e : edges) {
    if (e.source >= num_nodes || e.target >= num_nodes) throw DataError("edge endpoint out of range");
  }
  g.edges_.assign(edges.begin(), edges.end());
  g.times_.assign(times.begin(), times.end());
  g.finalize();
  return g;
}

std::vector<NodeIndex> dangling_nodes(const CitationGraph& graph) {
  std::vector<NodeIndex> out;
  for (NodeIndex j = 0; j < graph.num_nodes(); ++j) {
    if (graph.in_degree(j) == 0) out.push_back(j);
  }
  return out;
}

bool SnapshotView::contains(NodePair edge) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), edge);
}

SnapshotView snapshot(const CitationGraph& graph, Timestamp cutoff) {
  if (!graph.timed()) {
    throw DataError("snapshots need per-edge timestamps; the edge list has no third column");
  }
  SnapshotView view;
  view.base_ = &graph;
  view.cutoff_ = cutoff;
  const auto& times = graph.edge_times();
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    if (times[e] <= cutoff) view.edges_.push_back(graph.edges()[e]);
  }
  view.sorted_ = view.edges_;
  std::sort(view.sorted_.begin(), view.sorted_.end());
  return view;
}

}  // namespace patsteg
