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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "patsteg/corpus.hpp"
#include "patsteg/graph.hpp"
#include "patsteg/model.hpp"

namespace patsteg {

// ---------------------------------------------------------------------------
// Metrics

/// Probability that a random positive outscores a random negative, ties
/// counting one half. Throws DomainError if either list is empty.
double auc(std::span<const double> positive_scores, std::span<const double> negative_scores);

/// Sum of precision@p over relevant positions p <= k, divided by
/// min(k, relevant items in the list). 0 without relevant items in the top k.
/// Throws DomainError for k < 1.
double average_precision_at_k(std::span<const int> ranked_relevance, std::size_t k);

/// DCG@k with gain 1 / log2(p + 1), over the ideal DCG@k. 0 when nothing is
/// relevant. Throws DomainError for k < 1.
double ndcg_at_k(std::span<const int> ranked_relevance, std::size_t k);

/// R-precision style recall: the top |positives| of all pairs ranked by
/// descending score are predicted positive; ties keep input order with
/// positives listed first. Throws DomainError if either list is empty.
double recall(std::span<const double> positive_scores, std::span<const double> negative_scores);

/// Relevance flags of `scores` sorted descending, ties in input order.
std::vector<int> rank_relevance(std::span<const double> scores, std::span<const int> relevance);

// ---------------------------------------------------------------------------
// Evaluation harness

struct EvalConfig {
  std::size_t ranking_negatives = 50;
  std::vector<std::size_t> ks = {1, 5, 10};
  LinkScorer scorer = LinkScorer::kTotalImpact;
  SplitName split = SplitName::kTest;
  std::uint64_t seed = 0;

  /// Throws UsageError.
  void validate() const;
  nlohmann::json to_json() const;
};

struct SourceRanking {
  NodeIndex source = 0;
  std::size_t positives = 0;
  std::size_t candidates = 0;
  std::map<std::size_t, double> ap_at_k;
  std::map<std::size_t, double> ndcg_at_k;
};

struct MetricsReport {
  double auc = 0.0;
  double recall = 0.0;
  std::map<std::size_t, double> ap_at_k;
  std::map<std::size_t, double> ndcg_at_k;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t ranking_sources = 0;
  nlohmann::json config;
  std::vector<SourceRanking> per_source;

  /// Throws NumericError on non-finite values and DomainError on values
  /// outside [0, 1] or ap@1 != ndcg@1.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Score for the ordered pair (source, target); larger means more likely.
using PairScorer = std::function<double(NodeIndex, NodeIndex)>;

/// Scores the split's positives and negatives for AUC and recall, then ranks
/// each source's positives against `ranking_negatives` sampled nodes it
/// does not cite and macro-averages AP@k and nDCG@k over those sources.
/// Throws DomainError when the evaluated split is empty.
MetricsReport evaluate_scorer(const CitationGraph& graph, const DatasetSplit& split,
                              const PairScorer& scorer, const EvalConfig& config);

/// evaluate_scorer with infer-mode model scores.
MetricsReport evaluate(const ModelView& model, const CitationGraph& graph,
                       const DatasetSplit& split, const EvalConfig& config);

/// One row per ranked source: source id, counts, then ap@k and ndcg@k columns.
std::string per_source_csv(const MetricsReport& report, const CitationGraph& graph);

}  // namespace patsteg
