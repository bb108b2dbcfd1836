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

#include <cmath>

#include "patsteg/error.hpp"
#include "patsteg/model.hpp"

namespace patsteg {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

TEST(Representation, NormalizesConcatenation) {
  const auto r = node_representation(vec({0, 0}), vec({3, 4}));
  EXPECT_TRUE(r.r.isApprox(vec({0, 0, 0.6, 0.8})));
  EXPECT_DOUBLE_EQ(r.norm, 5.0);
  EXPECT_FALSE(r.zero);
  EXPECT_EQ(node_representation(vec({1, 0}), vec({0, 0, 0})).r, vec({1, 0, 0, 0, 0}));
}

TEST(Representation, ZeroInputIsFlagged) {
  const auto r = node_representation(vec({0, 0}), vec({0, 0}));
  EXPECT_TRUE(r.zero);
  EXPECT_EQ(r.r, Vector::Zero(4));
}

TEST(Representation, DimensionMismatch) {
  const auto p = ModelParams::zeros({2, 3, 2}, 4);
  EXPECT_THROW(node_representation(0, vec({1, 2}), p), DataError);
  EXPECT_NO_THROW(node_representation(0, vec({1, 2, 3}), p));
}

TEST(CitationEffect, LinearMaps) {
  auto p = ModelParams::zeros({2, 1, 1}, 1);
  p.effect = RowMatrix::Identity(2, 2);
  EXPECT_TRUE(citation_effect(vec({0.2, 0.8}), p).isApprox(vec({0.2, 0.8})));
  p.effect.setZero();
  EXPECT_EQ(citation_effect(vec({0.2, 0.8}), p), Vector::Zero(2));
  p.effect << 0, 1, 1, 0;
  EXPECT_TRUE(citation_effect(vec({0.2, 0.8}), p).isApprox(vec({0.8, 0.2})));
}

TEST(CitationEffect, IsLinearInState) {
  Rng rng(1);
  const auto p = ModelParams::initialize({4, 2, 2}, 3, rng);
  const Vector d1 = vec({0.1, 0.2, 0.3, 0.4});
  const Vector d2 = vec({0.7, 0.05, 0.15, 0.1});
  const Vector lhs = citation_effect(0.3 * d1 + 1.7 * d2, p);
  const Vector rhs = 0.3 * citation_effect(d1, p) + 1.7 * citation_effect(d2, p);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EdgeSimilarity, Hadamard) {
  EXPECT_EQ(edge_similarity(vec({1, 0}), vec({0, 1})), vec({0, 0}));
  EXPECT_TRUE(edge_similarity(vec({0.6, 0.8}), vec({0.6, 0.8})).isApprox(vec({0.36, 0.64})));
  EXPECT_EQ(edge_similarity(vec({0.6, 0.8}), vec({0, 0})), vec({0, 0}));
}

TEST(EdgeSimilarity, UnitInputsHaveL1AtMostOne) {
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    Vector a(7), b(7);
    for (int k = 0; k < 7; ++k) {
      a[k] = rng.uniform(-1, 1);
      b[k] = rng.uniform(-1, 1);
    }
    a.normalize();
    b.normalize();
    EXPECT_LE(edge_similarity(a, b).lpNorm<1>(), 1.0 + 1e-12);
  }
}

TEST(AspectImpact, Examples) {
  auto p = ModelParams::zeros({2, 1, 1}, 1);
  p.effect_to_aspect = RowMatrix::Identity(2, 2);
  EXPECT_TRUE(aspect_impact(vec({0.2, 0.8}), vec({0.5, 0.5}), p).isApprox(vec({0.2, 0.8})));
  p.effect_to_aspect.setZero();
  EXPECT_EQ(aspect_impact(vec({0.2, 0.8}), vec({0.5, 0.5}), p), Vector::Zero(2));
  p.bias = vec({1, 2});
  EXPECT_EQ(aspect_impact(vec({0.2, 0.8}), vec({0.5, 0.5}), p), vec({1, 2}));
}

TEST(SampleAspect, InferIsArgmaxWithLowestIndexTies) {
  EXPECT_EQ(sample_aspect(vec({0.2, 0.8}), AspectMode::kInfer, 1.0, nullptr).one_hot, vec({0, 1}));
  EXPECT_EQ(sample_aspect(vec({0.5, 0.5}), AspectMode::kInfer, 1.0, nullptr).one_hot, vec({1, 0}));
  EXPECT_EQ(sample_aspect(vec({0.1, 0.9, 0.9}), AspectMode::kInfer, 1.0, nullptr).index, 1u);
}

TEST(SampleAspect, ShiftInvariant) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    Vector d(5);
    for (int k = 0; k < 5; ++k) d[k] = rng.uniform(-3, 3);
    const double shift = rng.uniform(-100, 100);
    const Vector shifted = (d.array() + shift).matrix();
    EXPECT_EQ(sample_aspect(d, AspectMode::kInfer, 1.0, nullptr).index,
              sample_aspect(shifted, AspectMode::kInfer, 1.0, nullptr).index);
    EXPECT_LT((softmax(d) - softmax(shifted)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SampleAspect, Errors) {
  Rng rng(4);
  EXPECT_THROW(sample_aspect(vec({0.0, NAN}), AspectMode::kInfer, 1.0, nullptr), NumericError);
  EXPECT_THROW(sample_aspect(vec({0.0, INFINITY}), AspectMode::kTrain, 1.0, &rng), NumericError);
  EXPECT_THROW(sample_aspect(vec({0.0, 1.0}), AspectMode::kTrain, 0.0, &rng), DomainError);
  EXPECT_THROW(sample_aspect(vec({0.0, 1.0}), AspectMode::kTrain, 1.0, nullptr), DomainError);
}

TEST(SampleAspect, UniformLogitsSplitEvenly) {
  Rng rng(5);
  const Vector d = vec({0, 0});
  int first = 0;
  const int draws = 100000;
  for (int s = 0; s < draws; ++s) first += sample_aspect(d, AspectMode::kTrain, 1.0, &rng).index == 0;
  EXPECT_NEAR(static_cast<double>(first) / draws, 0.5, 0.01);
}

TEST(SampleAspect, TrainModeRelaxation) {
  Rng rng(6);
  const Vector d = vec({0.3, -0.2, 1.1});
  const auto s = sample_aspect(d, AspectMode::kTrain, 0.5, &rng);
  EXPECT_NEAR(s.relaxed.sum(), 1.0, 1e-12);
  EXPECT_TRUE(s.probabilities.isApprox(softmax(d)));
  Eigen::Index arg;
  (s.noise + d).maxCoeff(&arg);
  EXPECT_EQ(static_cast<std::size_t>(arg), s.index);
  s.relaxed.maxCoeff(&arg);
  EXPECT_EQ(static_cast<std::size_t>(arg), s.index);
}

TEST(MaskedImpact, Examples) {
  EXPECT_EQ(masked_impact(vec({0, 1}), vec({0.3, -0.4})), vec({0, 0}));
  EXPECT_EQ(masked_impact(vec({1, 0}), vec({0.3, -0.4})), vec({0.3, 0}));
  EXPECT_EQ(masked_impact(vec({1, 0}), vec({0, 5})), vec({0, 0}));
}

TEST(LinkScore, ElementSums) {
  EXPECT_DOUBLE_EQ(link_score(vec({0.2, 0.8}), vec({0.36, 0.64})), 2.0);
  EXPECT_EQ(link_score(vec({0, 0}), vec({0, 0})), 0.0);
  EXPECT_EQ(link_score(vec({-1, 1}), vec({0.5})), 0.5);
}

class ScorePairTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(8);
    params = ModelParams::initialize({3, 4, 5}, 6, rng);
    text = RowMatrix(6, 4);
    for (Eigen::Index a = 0; a < text.size(); ++a) text.data()[a] = rng.uniform(-1, 1);
    state = initialize_state(6, 3);
  }
  ModelParams params;
  RowMatrix text;
  AspectState state;
};

TEST_F(ScorePairTest, ComposesOperations) {
  const ModelView view{text, state, params};
  const auto s = score_pair(1, 4, view, AspectMode::kInfer);
  const auto ri = node_representation(1, text.row(1).transpose(), params);
  const auto rj = node_representation(4, text.row(4).transpose(), params);
  EXPECT_EQ(s.source_rep.r, ri.r);
  EXPECT_EQ(s.effect, citation_effect(state.values.row(4).transpose(), params));
  EXPECT_EQ(s.similarity, edge_similarity(ri.r, rj.r));
  EXPECT_EQ(s.impact, aspect_impact(s.effect, s.similarity, params));
  EXPECT_EQ(s.masked, masked_impact(s.alpha(), s.impact));
  EXPECT_EQ(s.score, link_score(s.effect, s.similarity));
  EXPECT_EQ(s.value(LinkScorer::kMaskedImpact), s.masked.sum());
  EXPECT_THROW(score_pair(2, 2, view, AspectMode::kInfer), DomainError);
}

TEST_F(ScorePairTest, InferIsDeterministic) {
  const ModelView view{text, state, params};
  const auto a = score_pair(0, 3, view, AspectMode::kInfer);
  const auto b = score_pair(0, 3, view, AspectMode::kInfer);
  EXPECT_EQ(a.impact, b.impact);
  EXPECT_EQ(a.alpha(), b.alpha());
  EXPECT_EQ(a.score, b.score);
}

TEST_F(ScorePairTest, BundleInvariantsUnderRandomParameters) {
  Rng rng(10);
  for (int t = 0; t < 100; ++t) {
    for (auto* m : {&params.effect, &params.effect_to_aspect, &params.similarity_to_aspect}) {
      for (Eigen::Index a = 0; a < m->size(); ++a) m->data()[a] = rng.uniform(-2, 2);
    }
    for (Eigen::Index a = 0; a < params.bias.size(); ++a) params.bias[a] = rng.uniform(-1, 1);
    const ModelView view{text, state, params};
    const auto mode = t % 2 ? AspectMode::kTrain : AspectMode::kInfer;
    const auto s = score_pair(static_cast<NodeIndex>(t % 6), static_cast<NodeIndex>((t + 1) % 6),
                              view, mode, 1.0, &rng);
    EXPECT_EQ(s.alpha().sum(), 1.0);
    EXPECT_EQ((s.alpha().array() == 1.0).count(), 1);
    EXPECT_EQ((s.alpha().array() == 0.0).count(), s.alpha().size() - 1);
    EXPECT_GE(s.masked.minCoeff(), 0.0);
    EXPECT_LE((s.masked.array() != 0.0).count(), 1);
    for (Eigen::Index k = 0; k < s.masked.size(); ++k) {
      EXPECT_LE(s.masked[k], std::max(s.impact[k], 0.0));
    }
    EXPECT_NEAR(s.source_rep.r.norm(), 1.0, 1e-6);
  }
}

TEST(ModelParams, InitializationRanges) {
  Rng rng(12);
  const ModelDims dims{5, 10, 20};
  const auto p = ModelParams::initialize(dims, 50, rng);
  EXPECT_LE(p.effect.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(5.0));
  EXPECT_LE(p.effect_to_aspect.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(5.0));
  EXPECT_LE(p.similarity_to_aspect.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(30.0));
  EXPECT_EQ(p.bias, Vector::Zero(5));
  EXPECT_LE(p.structural.cwiseAbs().maxCoeff(), 0.5 / 20.0);
  EXPECT_GT(p.structural.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(p.all_finite());
  EXPECT_NO_THROW(p.validate());
  auto bad = p;
  bad.bias[0] = NAN;
  EXPECT_THROW(bad.validate(), NumericError);
}

}  // namespace
}  // namespace patsteg
