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

#include <gtest/gtest.h>

#include "patsteg/error.hpp"
#include "patsteg/eval.hpp"
#include "patsteg/rng.hpp"
#include "support/synthetic.hpp"

namespace patsteg {
namespace {

struct Fixture {
  CitationGraph graph;
  DatasetSplit split;
};

Fixture random_fixture(std::uint64_t seed) {
  Rng rng(seed);
  const auto edges = testing::random_edges(120, 0.05, rng);
  Fixture f;
  f.graph = build_graph_from_pairs(120, edges);
  f.split = split_edges(f.graph, {0.8, 0.1, 0.1}, 1, seed);
  return f;
}

TEST(Evaluate, OracleScorerIsPerfect) {
  const auto f = random_fixture(1);
  const PairScorer oracle = [&](NodeIndex i, NodeIndex j) { return f.graph.has_edge(i, j) ? 1.0 : 0.0; };
  const auto report = evaluate_scorer(f.graph, f.split, oracle, EvalConfig{});
  EXPECT_EQ(report.auc, 1.0);
  EXPECT_EQ(report.recall, 1.0);
  for (const auto& [k, v] : report.ap_at_k) EXPECT_EQ(v, 1.0) << "k=" << k;
  for (const auto& [k, v] : report.ndcg_at_k) EXPECT_NEAR(v, 1.0, 1e-15) << "k=" << k;
  EXPECT_EQ(report.positives, f.split.test().size());
  EXPECT_EQ(report.negatives, f.split.negatives_of(SplitName::kTest).size());
  EXPECT_NO_THROW(report.validate());
  EXPECT_EQ(report.to_json()["config"]["recall_convention"].is_string(), true);
}

TEST(Evaluate, RandomScorerAucNearHalf) {
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = random_fixture(100 + seed);
    Rng noise(seed);
    const PairScorer random = [&](NodeIndex, NodeIndex) { return noise.uniform01(); };
    const auto report = evaluate_scorer(f.graph, f.split, random, EvalConfig{});
    EXPECT_NO_THROW(report.validate());
    total += report.auc;
  }
  const double mean = total / 10.0;
  EXPECT_GE(mean, 0.4);
  EXPECT_LE(mean, 0.6);
}

TEST(Evaluate, RankingCandidatesAndDeterminism) {
  const auto f = random_fixture(2);
  EvalConfig config;
  config.ranking_negatives = 7;
  config.seed = 9;
  const PairScorer s = [](NodeIndex i, NodeIndex j) { return static_cast<double>((i * 31 + j * 17) % 13); };
  const auto a = evaluate_scorer(f.graph, f.split, s, config);
  const auto b = evaluate_scorer(f.graph, f.split, s, config);
  EXPECT_EQ(a.to_json(), b.to_json());
  for (const auto& src : a.per_source) {
    EXPECT_GE(src.positives, 1u);
    EXPECT_LE(src.candidates, src.positives + 7);
    EXPECT_EQ(src.ap_at_k.at(1), src.ndcg_at_k.at(1));
  }
  const auto csv = per_source_csv(a, f.graph);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), a.per_source.size() + 1);
}

TEST(Evaluate, EmptySplitAndBadConfig) {
  const auto f = random_fixture(3);
  DatasetSplit empty = f.split;
  empty.positives[2].clear();
  const PairScorer s = [](NodeIndex, NodeIndex) { return 0.0; };
  EXPECT_THROW(evaluate_scorer(f.graph, empty, s, EvalConfig{}), DomainError);
  EvalConfig bad;
  bad.ks = {0};
  EXPECT_THROW(bad.validate(), UsageError);
}

TEST(MetricsReport, ValidateRejectsBadValues) {
  MetricsReport r;
  r.auc = 0.5;
  r.recall = 0.5;
  r.ap_at_k[1] = 0.5;
  r.ndcg_at_k[1] = 0.5;
  EXPECT_NO_THROW(r.validate());
  r.auc = 1.5;
  EXPECT_THROW(r.validate(), DomainError);
  r.auc = std::nan("");
  EXPECT_THROW(r.validate(), NumericError);
  r.auc = 0.5;
  r.ndcg_at_k[1] = 0.25;
  EXPECT_THROW(r.validate(), DomainError);
}

}  // namespace
}  // namespace patsteg
