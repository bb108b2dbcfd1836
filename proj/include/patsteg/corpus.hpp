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

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "patsteg/graph.hpp"

namespace patsteg {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// ---------------------------------------------------------------------------
// Edge lists

struct EdgeListLoad {
  std::vector<EdgeRecord> edges;
  std::size_t duplicate_count = 0;
  std::size_t self_loop_count = 0;
};

/// Parses `source<TAB>target[<TAB>timestamp]` lines. Blank lines and lines
/// starting with '#' are skipped. Duplicates (same source and target) keep
/// the first occurrence; self-loops are dropped. Both are counted.
EdgeListLoad parse_edge_list(std::istream& in, const std::string& source_name);
EdgeListLoad load_edge_list(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Node text

enum class Channel : std::uint8_t { kTitle = 0, kAbstract = 1, kClaim = 2 };

inline constexpr std::array<Channel, 3> kAllChannels = {Channel::kTitle, Channel::kAbstract,
                                                        Channel::kClaim};

std::string_view channel_name(Channel c);
std::optional<Channel> parse_channel(std::string_view name);

/// A nonempty subset of channels, kept in canonical title/abstract/claim order.
class ChannelSet {
 public:
  ChannelSet() = default;
  explicit ChannelSet(std::initializer_list<Channel> channels);

  /// Parses "title", "title+abstract", "abstract,claim", ... Throws UsageError.
  static ChannelSet parse(std::string_view list);

  bool contains(Channel c) const { return (mask_ >> static_cast<int>(c)) & 1U; }
  bool empty() const { return mask_ == 0; }
  std::vector<Channel> channels() const;
  /// "title+abstract" style name.
  std::string to_string() const;

  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

 private:
  unsigned mask_ = 0;
};

struct TokenizedDocument {
  std::string node_id;
  std::map<Channel, std::vector<std::string>> channels;
};

using DocumentMap = std::map<std::string, TokenizedDocument, std::less<>>;

/// Parses `node_id<TAB>channel<TAB>space separated tokens` rows. Rows for the
/// same node and channel append. Unknown channels are a ParseError.
DocumentMap parse_node_text(std::istream& in, const std::string& source_name);
DocumentMap load_node_text(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Word vectors

class WordVectorTable {
 public:
  explicit WordVectorTable(std::size_t dimension = 1);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return index_.size(); }

  /// Adds an entry unless the token is already present. Returns whether it
  /// was inserted. Throws DataError on a dimension mismatch.
  bool insert(std::string token, std::span<const double> values);

  /// Vector for a token, or an empty span when out of vocabulary.
  std::span<const double> find(std::string_view token) const;

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> values_;
};

struct WordVectorLoad {
  WordVectorTable table;
  std::size_t duplicate_count = 0;
};

/// Whitespace-separated `token v1 ... vL` rows; L comes from the first row.
WordVectorLoad parse_word_vectors(std::istream& in, const std::string& source_name);
WordVectorLoad load_word_vectors(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Text embeddings

struct TextEmbedding {
  std::vector<double> values;
  std::size_t token_count = 0;
  std::size_t in_vocabulary = 0;
  /// Fraction of tokens missing from the table; 0 for an empty document.
  double oov_ratio() const {
    return token_count == 0 ? 0.0
                            : static_cast<double>(token_count - in_vocabulary) /
                                  static_cast<double>(token_count);
  }
};

/// Mean of the in-vocabulary token vectors across the selected channels'
/// concatenated token streams. OOV tokens are skipped; a document with no
/// known token maps to the zero vector.
TextEmbedding embed_text(const TokenizedDocument& doc, const ChannelSet& channels,
                         const WordVectorTable& table);

struct CorpusEmbeddingStats {
  std::size_t nodes_without_text = 0;
  std::size_t zero_vectors = 0;
  std::size_t tokens = 0;
  std::size_t oov_tokens = 0;
  double oov_ratio() const {
    return tokens == 0 ? 0.0 : static_cast<double>(oov_tokens) / static_cast<double>(tokens);
  }
};

/// Row i holds the text embedding of graph node i (zero when the node has
/// no document).
RowMatrix embed_corpus(const CitationGraph& graph, const DocumentMap& docs,
                       const ChannelSet& channels, const WordVectorTable& table,
                       CorpusEmbeddingStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Train / validation / test splits

enum class SplitName : std::uint8_t { kTrain = 0, kValidation = 1, kTest = 2 };
std::string_view split_name(SplitName s);

using SplitRatios = std::array<double, 3>;

/// Disjoint partition of the edge set plus sampled non-edges per split.
struct DatasetSplit {
  std::array<std::vector<NodePair>, 3> positives;
  std::array<std::vector<NodePair>, 3> negatives;
  SplitRatios ratios{};
  std::uint32_t negatives_per_positive = 1;
  std::uint64_t seed = 0;

  const std::vector<NodePair>& train() const { return positives[0]; }
  const std::vector<NodePair>& validation() const { return positives[1]; }
  const std::vector<NodePair>& test() const { return positives[2]; }
  const std::vector<NodePair>& negatives_of(SplitName s) const {
    return negatives[static_cast<int>(s)];
  }

  friend bool operator==(const DatasetSplit&, const DatasetSplit&) = default;
};

/// Split sizes for `total` items under the largest-remainder rule.
std::array<std::size_t, 3> largest_remainder_sizes(std::size_t total, const SplitRatios& ratios);

/// Uniform random partition of the graph's edges with uniformly sampled
/// non-edge negatives (no self-loops, no edge of the graph, no repeats).
/// Throws UsageError for invalid ratios and DomainError when the graph has
/// fewer than 10 edges or too few non-edges.
DatasetSplit split_edges(const CitationGraph& graph, const SplitRatios& ratios,
                         std::uint32_t negatives_per_positive, std::uint64_t seed);

/// Split membership keyed by node ids.
nlohmann::json split_to_json(const DatasetSplit& split, const CitationGraph& graph);
/// Throws DataError on schema problems or ids missing from the graph.
DatasetSplit split_from_json(const nlohmann::json& j, const CitationGraph& graph);

}  // namespace patsteg
