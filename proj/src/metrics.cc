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
#include <numeric>

#include "patsteg/error.hpp"
#include "patsteg/eval.hpp"

namespace patsteg {

double auc(std::span<const double> positive_scores, std::span<const double> negative_scores) {
  if (positive_scores.empty() || negative_scores.empty()) {
    throw DomainError("auc needs at least one positive and one negative score");
  }
  std::vector<double> neg(negative_scores.begin(), negative_scores.end());
  std::sort(neg.begin(), neg.end());
  // Twice the Mann-Whitney statistic, kept integral.
  std::uint64_t twice = 0;
  for (double p : positive_scores) {
    const auto lo = std::lower_bound(neg.begin(), neg.end(), p);
    const auto hi = std::upper_bound(lo, neg.end(), p);
    twice += 2 * static_cast<std::uint64_t>(lo - neg.begin()) + static_cast<std::uint64_t>(hi - lo);
  }
  return static_cast<double>(twice) /
         (2.0 * static_cast<double>(positive_scores.size()) *
          static_cast<double>(negative_scores.size()));
}

double average_precision_at_k(std::span<const int> ranked_relevance, std::size_t k) {
  if (k < 1) throw DomainError("average_precision_at_k needs k >= 1");
  const auto relevant = static_cast<std::size_t>(
      std::count_if(ranked_relevance.begin(), ranked_relevance.end(), [](int r) { return r != 0; }));
  const std::size_t cut = std::min(k, ranked_relevance.size());
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t p = 0; p < cut; ++p) {
    if (ranked_relevance[p] == 0) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(p + 1);
  }
  if (hits == 0) return 0.0;
  return sum / static_cast<double>(std::min(k, relevant));
}

double ndcg_at_k(std::span<const int> ranked_relevance, std::size_t k) {
  if (k < 1) throw DomainError("ndcg_at_k needs k >= 1");
  const std::size_t cut = std::min(k, ranked_relevance.size());
  std::size_t relevant = 0;
  for (int r : ranked_relevance) relevant += r != 0;
  if (relevant == 0) return 0.0;
  double dcg = 0.0;
  for (std::size_t p = 0; p < cut; ++p) {
    if (ranked_relevance[p] != 0) dcg += 1.0 / std::log2(static_cast<double>(p + 2));
  }
  double ideal = 0.0;
  for (std::size_t p = 0; p < std::min(cut, relevant); ++p) {
    ideal += 1.0 / std::log2(static_cast<double>(p + 2));
  }
  return dcg / ideal;
}

std::vector<int> rank_relevance(std::span<const double> scores, std::span<const int> relevance) {
  if (scores.size() != relevance.size()) {
    throw DomainError("rank_relevance: scores and relevance differ in length");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<int> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(relevance[i]);
  return out;
}

double recall(std::span<const double> positive_scores, std::span<const double> negative_scores) {
  if (positive_scores.empty() || negative_scores.empty()) {
    throw DomainError("recall needs at least one positive and one negative score");
  }
  std::vector<double> scores(positive_scores.begin(), positive_scores.end());
  scores.insert(scores.end(), negative_scores.begin(), negative_scores.end());
  std::vector<int> relevance(scores.size(), 0);
  std::fill_n(relevance.begin(), positive_scores.size(), 1);
  const auto ranked = rank_relevance(scores, relevance);
  const auto hits = std::count(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(positive_scores.size()), 1);
  return static_cast<double>(hits) / static_cast<double>(positive_scores.size());
}

}  // namespace patsteg
