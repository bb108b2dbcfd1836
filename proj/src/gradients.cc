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

#include "patsteg/error.hpp"
#include "patsteg/training.hpp"

namespace patsteg {

double loss_edge(double score_positive, double score_negative, double margin) {
  return std::max(0.0, margin - (score_positive - score_negative));
}

double loss_aspect(const Vector& impact_positive, const Vector& impact_negative,
                   const Vector& alpha, double margin) {
  return std::max(0.0, margin - (alpha.dot(impact_positive) - alpha.dot(impact_negative)));
}

TripletForward forward_triplet(const Triplet& t, const ModelView& model, const TrainConfig& config,
                               AspectMode mode, Rng* gumbel, const Vector* frozen_alpha) {
  TripletForward f;
  f.triplet = t;
  f.positive = score_pair(t.source, t.positive, model, mode, config.temperature, gumbel);
  f.negative = score_pair(t.source, t.negative, model, AspectMode::kInfer, config.temperature);
  f.alpha = frozen_alpha ? *frozen_alpha : f.positive.alpha();
  f.edge_loss = loss_edge(f.positive.score, f.negative.score, config.margin_edge);
  f.aspect_loss = loss_aspect(f.positive.impact, f.negative.impact, f.alpha, config.margin_aspect);
  f.total = f.edge_loss + config.aspect_loss_weight * f.aspect_loss;
  return f;
}

ParamGradient::ParamGradient(const ModelDims& dims, std::size_t num_nodes) {
  const auto i = static_cast<Eigen::Index>(dims.aspects);
  effect = RowMatrix::Zero(i, i);
  effect_to_aspect = RowMatrix::Zero(i, i);
  similarity_to_aspect = RowMatrix::Zero(static_cast<Eigen::Index>(dims.rep_dim()), i);
  bias = Vector::Zero(i);
  structural = RowMatrix::Zero(static_cast<Eigen::Index>(num_nodes),
                               static_cast<Eigen::Index>(dims.struct_dim));
  touched_.assign(num_nodes, 0);
}

void ParamGradient::add_structural(NodeIndex i, const Eigen::Ref<const Vector>& g) {
  structural.row(i) += g.transpose();
  if (!touched_[i]) {
    touched_[i] = 1;
    touched_rows_.push_back(i);
  }
}

void ParamGradient::reset() {
  effect.setZero();
  effect_to_aspect.setZero();
  similarity_to_aspect.setZero();
  bias.setZero();
  for (NodeIndex i : touched_rows_) {
    structural.row(i).setZero();
    touched_[i] = 0;
  }
  touched_rows_.clear();
}

namespace {

// Back through r = u / |u| into the structural half of u.
void backprop_representation(NodeIndex node, const NodeRepresentation& rep, const Vector& grad_r,
                             std::size_t text_dim, ParamGradient& grad) {
  if (rep.zero) return;
  const Vector grad_u = (grad_r - rep.r * rep.r.dot(grad_r)) / rep.norm;
  grad.add_structural(node, grad_u.tail(grad_u.size() - static_cast<Eigen::Index>(text_dim)));
}

// One scored pair with upstream gradients on F (scalar) and D (vector).
void backward_pair(NodeIndex i, NodeIndex j, const EdgeScore& s, double grad_score,
                   const Vector& grad_impact, const ModelView& model, ParamGradient& grad) {
  const auto& p = model.params;
  const bool impact_live = !grad_impact.isZero(0.0);
  Vector grad_effect = Vector::Constant(s.effect.size(), grad_score);
  Vector grad_similarity = Vector::Constant(s.similarity.size(), grad_score);
  if (impact_live) {
    grad_effect.noalias() += p.effect_to_aspect * grad_impact;
    grad_similarity.noalias() += p.similarity_to_aspect * grad_impact;
    grad.effect_to_aspect.noalias() += s.effect * grad_impact.transpose();
    grad.similarity_to_aspect.noalias() += s.similarity * grad_impact.transpose();
    grad.bias += grad_impact;
  }
  grad.effect.noalias() += grad_effect * model.state.values.row(j);

  const std::size_t text_dim = p.dims.text_dim;
  backprop_representation(i, s.source_rep, grad_similarity.cwiseProduct(s.target_rep.r), text_dim, grad);
  backprop_representation(j, s.target_rep, grad_similarity.cwiseProduct(s.source_rep.r), text_dim, grad);
}

}  // namespace

void backward_triplet(const TripletForward& fwd, const ModelView& model, const TrainConfig& config,
                      double weight, ParamGradient& grad) {
  const Eigen::Index aspects = static_cast<Eigen::Index>(model.params.dims.aspects);
  double grad_score = 0.0;
  if (fwd.edge_loss > 0.0) grad_score = weight;

  Vector grad_impact_pos = Vector::Zero(aspects);
  Vector grad_impact_neg = Vector::Zero(aspects);
  if (fwd.aspect_loss > 0.0) {
    const double w = weight * config.aspect_loss_weight;
    grad_impact_pos -= w * fwd.alpha;
    grad_impact_neg += w * fwd.alpha;
    const auto& sample = fwd.positive.aspect;
    if (config.straight_through && sample.relaxed.size() == aspects &&
        !sample.noise.isZero(0.0)) {
      // d loss / d alpha, pushed through softmax((g + log pi) / tau).
      const Vector grad_alpha = -w * (fwd.positive.impact - fwd.negative.impact);
      const Vector& soft = sample.relaxed;
      const Vector grad_logits = soft.cwiseProduct(
          (grad_alpha.array() - soft.dot(grad_alpha)).matrix());
      grad_impact_pos += grad_logits / config.temperature;
    }
  }

  const Triplet& t = fwd.triplet;
  backward_pair(t.source, t.positive, fwd.positive, -grad_score, grad_impact_pos, model, grad);
  backward_pair(t.source, t.negative, fwd.negative, grad_score, grad_impact_neg, model, grad);
}

double mean_triplet_loss(std::span<const Triplet> triplets, const ModelView& model,
                         const TrainConfig& config) {
  if (triplets.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : triplets) {
    sum += forward_triplet(t, model, config, AspectMode::kInfer, nullptr).total;
  }
  return sum / static_cast<double>(triplets.size());
}

}  // namespace patsteg
