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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "patsteg/corpus.hpp"
#include "patsteg/graph.hpp"
#include "patsteg/rng.hpp"

namespace patsteg::testing {

/// Everything a loader would produce for a dataset, plus ground truth.
struct SyntheticDataset {
  std::vector<EdgeRecord> edges;
  DocumentMap docs;
  /// Token and vector for every token used.
  std::vector<std::pair<std::string, std::vector<double>>> vectors;
  /// Ground-truth community or topic per node id, in node-creation order.
  std::vector<std::pair<std::string, int>> labels;

  WordVectorTable table() const;
};

/// Directed graph over nodes 0..n-1 where every ordered pair is an edge
/// with probability p (no self-loops). At least one edge is guaranteed.
std::vector<NodePair> random_edges(std::size_t n, double p, Rng& rng);

struct CommunityOptions {
  std::size_t nodes = 240;
  std::size_t communities = 4;
  std::size_t citations_per_node = 4;
  double within_community = 0.85;
  std::size_t vector_dim = 16;
  /// Tokens per document and the chance each token comes from the node's
  /// community vocabulary rather than shared noise, per channel.
  std::size_t title_tokens = 4;
  double title_signal = 0.8;
  std::size_t abstract_tokens = 12;
  double abstract_signal = 0.45;
  std::size_t claim_tokens = 12;
  double claim_signal = 0.1;
};

/// Communities of papers citing mostly within their community, with title,
/// abstract and claim channels of decreasing topical signal and Gaussian
/// word vectors.
SyntheticDataset community_corpus(const CommunityOptions& options, std::uint64_t seed);

/// 200 nodes: 20 hubs whose text mixes two disjoint vocabularies, and 90
/// nodes per topic that cite hubs and same-topic nodes. Labels are 0 and 1
/// for the topics and 2 for hubs. One-hot word vectors.
SyntheticDataset planted_topics(std::uint64_t seed);

/// Writes edges.tsv, text.tsv and vectors.txt into `dir`.
void write_dataset(const SyntheticDataset& data, const std::filesystem::path& dir);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace patsteg::testing
