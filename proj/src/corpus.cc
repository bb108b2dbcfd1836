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

#include "patsteg/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "patsteg/error.hpp"
#include "patsteg/io.hpp"
#include "patsteg/rng.hpp"

namespace patsteg {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

bool parse_double(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int64(std::string_view text, std::int64_t& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::uint64_t pair_key(NodeIndex s, NodeIndex t) {
  return (static_cast<std::uint64_t>(s) << 32) | t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Edge lists

EdgeListLoad parse_edge_list(std::istream& in, const std::string& source_name) {
  EdgeListLoad out;
  std::set<std::pair<std::string, std::string>, std::less<>> seen;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t data_lines = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (is_blank(line) || line.front() == '#') continue;
    ++data_lines;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(source_name, line_no,
                       "expected 2 or 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(source_name, line_no, "empty node id");
    }
    EdgeRecord rec{std::string(fields[0]), std::string(fields[1]), std::nullopt};
    if (fields.size() == 3) {
      std::int64_t t = 0;
      if (!parse_int64(fields[2], t)) {
        throw ParseError(source_name, line_no, "timestamp '" + std::string(fields[2]) +
                                                   "' is not an integer");
      }
      rec.time = t;
    }
    if (rec.source == rec.target) {
      ++out.self_loop_count;
      continue;
    }
    if (!seen.emplace(rec.source, rec.target).second) {
      ++out.duplicate_count;
      continue;
    }
    out.edges.push_back(std::move(rec));
  }
  if (data_lines == 0) throw DataError(source_name + ": edge list is empty");
  return out;
}

EdgeListLoad load_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in, path.string());
}

// ---------------------------------------------------------------------------
// Node text

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::kTitle:
      return "title";
    case Channel::kAbstract:
      return "abstract";
    case Channel::kClaim:
      return "claim";
  }
  return "?";
}

std::optional<Channel> parse_channel(std::string_view name) {
  for (Channel c : kAllChannels) {
    if (channel_name(c) == name) return c;
  }
  return std::nullopt;
}

ChannelSet::ChannelSet(std::initializer_list<Channel> channels) {
  for (Channel c : channels) mask_ |= 1U << static_cast<int>(c);
}

ChannelSet ChannelSet::parse(std::string_view list) {
  ChannelSet set;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find_first_of("+,", start);
    if (end == std::string_view::npos) end = list.size();
    const std::string_view name = list.substr(start, end - start);
    auto c = parse_channel(name);
    if (!c) throw UsageError("unknown text channel '" + std::string(name) + "'");
    set.mask_ |= 1U << static_cast<int>(*c);
    start = end + 1;
  }
  return set;
}

std::vector<Channel> ChannelSet::channels() const {
  std::vector<Channel> out;
  for (Channel c : kAllChannels) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

std::string ChannelSet::to_string() const {
  std::string out;
  for (Channel c : channels()) {
    if (!out.empty()) out += '+';
    out += channel_name(c);
  }
  return out;
}

DocumentMap parse_node_text(std::istream& in, const std::string& source_name) {
  DocumentMap docs;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (is_blank(line) || line.front() == '#') continue;
    auto fields = split_fields(line, '\t');
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(source_name, line_no, "expected node_id<TAB>channel<TAB>tokens");
    }
    if (fields[0].empty()) throw ParseError(source_name, line_no, "empty node id");
    auto channel = parse_channel(fields[1]);
    if (!channel) {
      throw ParseError(source_name, line_no,
                       "unknown channel '" + std::string(fields[1]) +
                           "' (allowed: title, abstract, claim)");
    }
    auto it = docs.find(fields[0]);
    if (it == docs.end()) {
      it = docs.emplace(std::string(fields[0]), TokenizedDocument{std::string(fields[0]), {}}).first;
    }
    auto& tokens = it->second.channels[*channel];
    if (fields.size() == 3) {
      for (auto tok : split_whitespace(fields[2])) tokens.emplace_back(tok);
    }
  }
  return docs;
}

DocumentMap load_node_text(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_node_text(in, path.string());
}

// ---------------------------------------------------------------------------
// Word vectors

WordVectorTable::WordVectorTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw DataError("word vector dimension must be positive");
}

bool WordVectorTable::insert(std::string token, std::span<const double> values) {
  if (values.size() != dimension_) {
    throw DataError("word vector for '" + token + "' has " + std::to_string(values.size()) +
                    " values, expected " + std::to_string(dimension_));
  }
  auto [it, inserted] = index_.try_emplace(std::move(token), index_.size());
  if (inserted) values_.insert(values_.end(), values.begin(), values.end());
  return inserted;
}

std::span<const double> WordVectorTable::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return {};
  return {values_.data() + it->second * dimension_, dimension_};
}

WordVectorLoad parse_word_vectors(std::istream& in, const std::string& source_name) {
  std::optional<WordVectorTable> table;
  std::size_t duplicates = 0;
  std::vector<double> values;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (is_blank(line)) continue;
    auto fields = split_whitespace(line);
    if (fields.size() < 2) {
      throw ParseError(source_name, line_no, "expected a token followed by numbers");
    }
    const std::size_t dim = fields.size() - 1;
    if (!table) {
      table.emplace(dim);
    } else if (dim != table->dimension()) {
      throw ParseError(source_name, line_no,
                       "dimension " + std::to_string(dim) + " differs from " +
                           std::to_string(table->dimension()) + " on the first line");
    }
    values.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_double(fields[k + 1], values[k])) {
        throw ParseError(source_name, line_no,
                         "non-numeric value '" + std::string(fields[k + 1]) + "'");
      }
    }
    if (!table->insert(std::string(fields[0]), values)) ++duplicates;
  }
  if (!table) throw DataError(source_name + ": word vector file is empty");
  return {std::move(*table), duplicates};
}

WordVectorLoad load_word_vectors(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_word_vectors(in, path.string());
}

// ---------------------------------------------------------------------------
// Text embeddings

TextEmbedding embed_text(const TokenizedDocument& doc, const ChannelSet& channels,
                         const WordVectorTable& table) {
  if (channels.empty()) throw UsageError("at least one text channel is required");
  TextEmbedding out;
  out.values.assign(table.dimension(), 0.0);
  for (Channel c : channels.channels()) {
    auto it = doc.channels.find(c);
    if (it == doc.channels.end()) continue;
    for (const auto& tok : it->second) {
      ++out.token_count;
      auto vec = table.find(tok);
      if (vec.empty()) continue;
      ++out.in_vocabulary;
      for (std::size_t k = 0; k < vec.size(); ++k) out.values[k] += vec[k];
    }
  }
  if (out.in_vocabulary > 0) {
    const double inv = 1.0 / static_cast<double>(out.in_vocabulary);
    for (double& v : out.values) v *= inv;
  }
  return out;
}

RowMatrix embed_corpus(const CitationGraph& graph, const DocumentMap& docs,
                       const ChannelSet& channels, const WordVectorTable& table,
                       CorpusEmbeddingStats* stats) {
  RowMatrix text = RowMatrix::Zero(static_cast<Eigen::Index>(graph.num_nodes()),
                                   static_cast<Eigen::Index>(table.dimension()));
  CorpusEmbeddingStats local;
  for (NodeIndex i = 0; i < graph.num_nodes(); ++i) {
    auto it = docs.find(graph.node_id(i));
    if (it == docs.end()) {
      ++local.nodes_without_text;
      ++local.zero_vectors;
      continue;
    }
    auto emb = embed_text(it->second, channels, table);
    local.tokens += emb.token_count;
    local.oov_tokens += emb.token_count - emb.in_vocabulary;
    if (emb.in_vocabulary == 0) ++local.zero_vectors;
    for (std::size_t k = 0; k < emb.values.size(); ++k) text(i, static_cast<Eigen::Index>(k)) = emb.values[k];
  }
  if (stats) *stats = local;
  return text;
}

// ---------------------------------------------------------------------------
// Splits

std::string_view split_name(SplitName s) {
  switch (s) {
    case SplitName::kTrain:
      return "train";
    case SplitName::kValidation:
      return "validation";
    case SplitName::kTest:
      return "test";
  }
  return "?";
}

std::array<std::size_t, 3> largest_remainder_sizes(std::size_t total, const SplitRatios& ratios) {
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (int s = 0; s < 3; ++s) {
    const double exact = ratios[s] * static_cast<double>(total);
    sizes[s] = static_cast<std::size_t>(std::floor(exact));
    remainders[s] = exact - std::floor(exact);
    assigned += sizes[s];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++sizes[order[k % 3]];
  return sizes;
}

DatasetSplit split_edges(const CitationGraph& graph, const SplitRatios& ratios,
                         std::uint32_t negatives_per_positive, std::uint64_t seed) {
  double sum = 0.0;
  for (double r : ratios) {
    if (!(r >= 0.0)) throw UsageError("split ratios must be nonnegative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw UsageError("split ratios must sum to 1");
  if (negatives_per_positive == 0) throw UsageError("negatives_per_positive must be positive");
  if (graph.num_edges() < 10) {
    throw DomainError("splitting needs at least 10 edges, graph has " +
                      std::to_string(graph.num_edges()));
  }

  const std::size_t m = graph.num_edges();
  const std::size_t n = graph.num_nodes();
  const std::uint64_t available = static_cast<std::uint64_t>(n) * (n - 1) - m;
  const std::uint64_t wanted = static_cast<std::uint64_t>(negatives_per_positive) * m;
  if (wanted > available) {
    throw DomainError("requested " + std::to_string(wanted) + " negatives but only " +
                      std::to_string(available) + " non-edges exist");
  }

  Rng rng(seed);
  std::vector<NodePair> shuffled = graph.edges();
  for (std::size_t k = m; k > 1; --k) std::swap(shuffled[k - 1], shuffled[rng.uniform_index(k)]);

  DatasetSplit split;
  split.ratios = ratios;
  split.negatives_per_positive = negatives_per_positive;
  split.seed = seed;
  const auto sizes = largest_remainder_sizes(m, ratios);
  std::size_t cursor = 0;
  for (int s = 0; s < 3; ++s) {
    split.positives[s].assign(shuffled.begin() + static_cast<std::ptrdiff_t>(cursor),
                              shuffled.begin() + static_cast<std::ptrdiff_t>(cursor + sizes[s]));
    cursor += sizes[s];
  }

  std::vector<NodePair> negatives;
  negatives.reserve(wanted);
  if (available <= 4 * wanted) {
    // Dense regime: enumerate all non-edges and take a uniform prefix.
    std::vector<NodePair> pool;
    pool.reserve(available);
    for (NodeIndex i = 0; i < n; ++i) {
      for (NodeIndex j = 0; j < n; ++j) {
        if (i != j && !graph.has_edge(i, j)) pool.push_back({i, j});
      }
    }
    for (std::size_t k = 0; k < wanted; ++k) {
      std::swap(pool[k], pool[k + rng.uniform_index(pool.size() - k)]);
      negatives.push_back(pool[k]);
    }
  } else {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(wanted * 2);
    while (negatives.size() < wanted) {
      const auto i = static_cast<NodeIndex>(rng.uniform_index(n));
      const auto j = static_cast<NodeIndex>(rng.uniform_index(n));
      if (i == j || graph.has_edge(i, j)) continue;
      if (!chosen.insert(pair_key(i, j)).second) continue;
      negatives.push_back({i, j});
    }
  }
  cursor = 0;
  for (int s = 0; s < 3; ++s) {
    const std::size_t count = static_cast<std::size_t>(negatives_per_positive) * sizes[s];
    split.negatives[s].assign(negatives.begin() + static_cast<std::ptrdiff_t>(cursor),
                              negatives.begin() + static_cast<std::ptrdiff_t>(cursor + count));
    cursor += count;
  }
  return split;
}

namespace {

nlohmann::json pairs_to_json(const std::vector<NodePair>& pairs, const CitationGraph& graph) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pairs) arr.push_back({graph.node_id(p.source), graph.node_id(p.target)});
  return arr;
}

std::vector<NodePair> pairs_from_json(const nlohmann::json& arr, const CitationGraph& graph,
                                      std::string_view what) {
  if (!arr.is_array()) throw DataError("split manifest: '" + std::string(what) + "' is not an array");
  std::vector<NodePair> out;
  out.reserve(arr.size());
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string()) {
      throw DataError("split manifest: malformed pair in '" + std::string(what) + "'");
    }
    auto s = graph.find(item[0].get<std::string>());
    auto t = graph.find(item[1].get<std::string>());
    if (!s || !t) throw DataError("split manifest: pair references a node missing from the graph");
    out.push_back({*s, *t});
  }
  return out;
}

}  // namespace

nlohmann::json split_to_json(const DatasetSplit& split, const CitationGraph& graph) {
  nlohmann::json j;
  j["seed"] = split.seed;
  j["ratios"] = split.ratios;
  j["negatives_per_positive"] = split.negatives_per_positive;
  nlohmann::json negatives;
  for (int s = 0; s < 3; ++s) {
    const std::string name(split_name(static_cast<SplitName>(s)));
    j[name] = pairs_to_json(split.positives[s], graph);
    negatives[name] = pairs_to_json(split.negatives[s], graph);
  }
  j["negatives"] = std::move(negatives);
  return j;
}

DatasetSplit split_from_json(const nlohmann::json& j, const CitationGraph& graph) {
  try {
    DatasetSplit split;
    split.seed = j.at("seed").get<std::uint64_t>();
    split.ratios = j.at("ratios").get<SplitRatios>();
    split.negatives_per_positive = j.at("negatives_per_positive").get<std::uint32_t>();
    for (int s = 0; s < 3; ++s) {
      const std::string name(split_name(static_cast<SplitName>(s)));
      split.positives[s] = pairs_from_json(j.at(name), graph, name);
      split.negatives[s] = pairs_from_json(j.at("negatives").at(name), graph, name);
    }
    return split;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("split manifest: ") + e.what());
  }
}

}  // namespace patsteg
