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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace patsteg {

using NodeIndex = std::uint32_t;
using Timestamp = std::int64_t;

/// Directed pair of dense node indices; (source, target) means source cites target.
struct NodePair {
  NodeIndex source = 0;
  NodeIndex target = 0;

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// One row of an edge list, still keyed by external node ids.
struct EdgeRecord {
  std::string source;
  std::string target;
  std::optional<Timestamp> time;
};

/// Immutable citation graph. Edge (i, j) means i cites j.
///
/// Nodes are indexed densely in order of first appearance in the edge list.
/// Adjacency lists are sorted and duplicate-free, and the in-lists are the
/// exact transpose of the out-lists.
class CitationGraph {
 public:
  std::size_t num_nodes() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::string& node_id(NodeIndex i) const { return ids_.at(i); }
  const std::vector<std::string>& node_ids() const { return ids_; }
  std::optional<NodeIndex> find(std::string_view id) const;
  /// Like find() but throws DomainError for unknown ids.
  NodeIndex index_of(std::string_view id) const;

  std::span<const NodeIndex> out_neighbors(NodeIndex i) const;
  std::span<const NodeIndex> in_neighbors(NodeIndex j) const;
  std::size_t out_degree(NodeIndex i) const { return out_neighbors(i).size(); }
  std::size_t in_degree(NodeIndex j) const { return in_neighbors(j).size(); }
  bool has_edge(NodeIndex i, NodeIndex j) const;

  /// Edges in input order.
  const std::vector<NodePair>& edges() const { return edges_; }

  bool timed() const { return !times_.empty(); }
  /// Per-edge timestamps aligned with edges(); empty when untimed.
  const std::vector<Timestamp>& edge_times() const { return times_; }
  /// Timestamp of an edge, or nullopt for untimed graphs / missing edges.
  std::optional<Timestamp> edge_time(NodeIndex i, NodeIndex j) const;

 private:
  friend CitationGraph build_graph(std::span<const EdgeRecord> edges);
  friend CitationGraph build_graph_from_pairs(std::size_t, std::span<const NodePair>,
                                              std::span<const Timestamp>);
  void finalize();

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<NodePair> edges_;
  std::vector<Timestamp> times_;
  // CSR layouts over sorted neighbors.
  std::vector<std::size_t> out_offsets_, in_offsets_;
  std::vector<NodeIndex> out_targets_, in_sources_;
  // Edge id for each out_targets_ slot, for time lookup.
  std::vector<std::size_t> out_edge_ids_;
};

/// Builds a graph from id-keyed edges. Throws DataError on an empty list,
/// duplicate edges, self-loops, or a mix of timed and untimed edges.
CitationGraph build_graph(std::span<const EdgeRecord> edges);

/// Builds a graph over nodes "0".."num_nodes-1"; isolated nodes are allowed.
/// `times` is either empty or aligned with `edges`.
CitationGraph build_graph_from_pairs(std::size_t num_nodes, std::span<const NodePair> edges,
                                     std::span<const Timestamp> times = {});

/// Nodes that are never cited (in-degree zero), ascending.
std::vector<NodeIndex> dangling_nodes(const CitationGraph& graph);

/// Cumulative view of a timed graph: all edges with time <= cutoff.
class SnapshotView {
 public:
  const CitationGraph& base() const { return *base_; }
  Timestamp cutoff() const { return cutoff_; }
  std::size_t num_nodes() const { return base_->num_nodes(); }
  /// Edges in base order.
  const std::vector<NodePair>& edges() const { return edges_; }
  bool contains(NodePair edge) const;

 private:
  friend SnapshotView snapshot(const CitationGraph& graph, Timestamp cutoff);
  const CitationGraph* base_ = nullptr;
  Timestamp cutoff_ = 0;
  std::vector<NodePair> edges_;
  std::vector<NodePair> sorted_;
};

/// Throws DataError when the graph carries no timestamps.
SnapshotView snapshot(const CitationGraph& graph, Timestamp cutoff);

}  // namespace patsteg
