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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "patsteg/error.hpp"
#include "patsteg/eval.hpp"
#include "patsteg/rng.hpp"

namespace patsteg {

void EvalConfig::validate() const {
  if (ranking_negatives < 1) throw UsageError("ranking_negatives must be >= 1");
  if (ks.empty()) throw UsageError("at least one ranking cutoff k is needed");
  for (std::size_t k : ks) {
    if (k < 1) throw UsageError("ranking cutoffs must be >= 1");
  }
}

nlohmann::json EvalConfig::to_json() const {
  return {{"ranking_negatives", ranking_negatives},
          {"ks", ks},
          {"scorer", scorer == LinkScorer::kTotalImpact ? "total_impact" : "masked_impact"},
          {"split", std::string(split_name(split))},
          {"seed", seed},
          {"recall_convention", "r-precision: top |positives| ranked pairs predicted positive"}};
}

namespace {

void check_unit(double v, const std::string& what) {
  if (!std::isfinite(v)) throw NumericError(what + " is not finite");
  if (v < 0.0 || v > 1.0) throw DomainError(what + " is outside [0, 1]");
}

nlohmann::json k_map(const std::map<std::size_t, double>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

}  // namespace

void MetricsReport::validate() const {
  check_unit(auc, "auc");
  check_unit(recall, "recall");
  for (const auto& [k, v] : ap_at_k) check_unit(v, "ap@" + std::to_string(k));
  for (const auto& [k, v] : ndcg_at_k) check_unit(v, "ndcg@" + std::to_string(k));
  const auto ap1 = ap_at_k.find(1);
  const auto nd1 = ndcg_at_k.find(1);
  if (ap1 != ap_at_k.end() && nd1 != ndcg_at_k.end() && ap1->second != nd1->second) {
    throw DomainError("ap@1 and ndcg@1 disagree");
  }
}

nlohmann::json MetricsReport::to_json() const {
  return {{"auc", auc},
          {"recall", recall},
          {"ap_at_k", k_map(ap_at_k)},
          {"ndcg_at_k", k_map(ndcg_at_k)},
          {"positives", positives},
          {"negatives", negatives},
          {"ranking_sources", ranking_sources},
          {"config", config}};
}

MetricsReport evaluate_scorer(const CitationGraph& graph, const DatasetSplit& split,
                              const PairScorer& scorer, const EvalConfig& config) {
  config.validate();
  const auto& pos = split.positives[static_cast<int>(config.split)];
  const auto& neg = split.negatives_of(config.split);
  if (pos.empty() || neg.empty()) {
    throw DomainError(std::string(split_name(config.split)) + " split has no positives or negatives");
  }
  auto score = [&](NodeIndex i, NodeIndex j) {
    const double s = scorer(i, j);
    if (!std::isfinite(s)) {
      throw NumericError("non-finite score for pair (" + graph.node_id(i) + ", " +
                         graph.node_id(j) + ")");
    }
    return s;
  };

  MetricsReport report;
  report.config = config.to_json();
  report.positives = pos.size();
  report.negatives = neg.size();
  std::vector<double> pos_scores, neg_scores;
  pos_scores.reserve(pos.size());
  neg_scores.reserve(neg.size());
  for (const auto& p : pos) pos_scores.push_back(score(p.source, p.target));
  for (const auto& p : neg) neg_scores.push_back(score(p.source, p.target));
  report.auc = auc(pos_scores, neg_scores);
  report.recall = recall(pos_scores, neg_scores);

  // Per-source candidate lists, sources in ascending index order.
  std::map<NodeIndex, std::vector<NodeIndex>> by_source;
  for (const auto& p : pos) by_source[p.source].push_back(p.target);
  Rng rng = Rng::stream(config.seed, "ranking");
  const std::size_t n = graph.num_nodes();
  for (std::size_t k : config.ks) {
    report.ap_at_k[k] = 0.0;
    report.ndcg_at_k[k] = 0.0;
  }
  for (auto& [source, targets] : by_source) {
    const std::size_t available = n - 1 - graph.out_degree(source);
    const std::size_t want = std::min(config.ranking_negatives, available);
    std::vector<NodeIndex> sampled;
    if (2 * want >= available) {
      std::vector<NodeIndex> pool;
      for (NodeIndex k = 0; k < n; ++k) {
        if (k != source && !graph.has_edge(source, k)) pool.push_back(k);
      }
      for (std::size_t a = 0; a < want; ++a) {
        std::swap(pool[a], pool[a + rng.uniform_index(pool.size() - a)]);
      }
      sampled.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
    } else {
      std::vector<char> taken(n, 0);
      while (sampled.size() < want) {
        const auto k = static_cast<NodeIndex>(rng.uniform_index(n));
        if (k == source || taken[k] || graph.has_edge(source, k)) continue;
        taken[k] = 1;
        sampled.push_back(k);
      }
    }
    std::vector<double> scores;
    std::vector<int> relevance;
    for (NodeIndex t : targets) {
      scores.push_back(score(source, t));
      relevance.push_back(1);
    }
    for (NodeIndex t : sampled) {
      scores.push_back(score(source, t));
      relevance.push_back(0);
    }
    const auto ranked = rank_relevance(scores, relevance);
    SourceRanking row{source, targets.size(), scores.size(), {}, {}};
    for (std::size_t k : config.ks) {
      row.ap_at_k[k] = average_precision_at_k(ranked, k);
      row.ndcg_at_k[k] = ndcg_at_k(ranked, k);
    }
    report.per_source.push_back(std::move(row));
  }
  report.ranking_sources = report.per_source.size();
  for (std::size_t k : config.ks) {
    double ap = 0.0, nd = 0.0;
    for (const auto& row : report.per_source) {
      ap += row.ap_at_k.at(k);
      nd += row.ndcg_at_k.at(k);
    }
    report.ap_at_k[k] = ap / static_cast<double>(report.ranking_sources);
    report.ndcg_at_k[k] = nd / static_cast<double>(report.ranking_sources);
  }
  return report;
}

MetricsReport evaluate(const ModelView& model, const CitationGraph& graph,
                       const DatasetSplit& split, const EvalConfig& config) {
  if (model.params.num_nodes() != graph.num_nodes()) {
    throw DataError("checkpoint and graph disagree on the number of nodes");
  }
  const LinkScorer which = config.scorer;
  return evaluate_scorer(
      graph, split,
      [&](NodeIndex i, NodeIndex j) {
        return score_pair(i, j, model, AspectMode::kInfer).value(which);
      },
      config);
}

std::string per_source_csv(const MetricsReport& report, const CitationGraph& graph) {
  std::ostringstream os;
  os.precision(17);
  os << "source,positives,candidates";
  std::vector<std::size_t> ks;
  for (const auto& [k, v] : report.ap_at_k) ks.push_back(k);
  for (std::size_t k : ks) os << ",ap@" << k;
  for (std::size_t k : ks) os << ",ndcg@" << k;
  os << '\n';
  for (const auto& row : report.per_source) {
    os << graph.node_id(row.source) << ',' << row.positives << ',' << row.candidates;
    for (std::size_t k : ks) os << ',' << row.ap_at_k.at(k);
    for (std::size_t k : ks) os << ',' << row.ndcg_at_k.at(k);
    os << '\n';
  }
  return os.str();
}

}  // namespace patsteg
