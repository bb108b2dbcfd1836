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

#include "patsteg/model.hpp"

#include <cmath>
#include <string>

#include "patsteg/error.hpp"

namespace patsteg {

namespace {

void fill_uniform(RowMatrix& m, double scale, Rng& rng) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform(-scale, scale);
  }
}

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

ModelParams ModelParams::zeros(const ModelDims& dims, std::size_t num_nodes) {
  if (dims.aspects == 0 || dims.text_dim == 0 || dims.struct_dim == 0) {
    throw DataError("model dimensions must be positive");
  }
  ModelParams p;
  p.dims = dims;
  p.effect = RowMatrix::Zero(idx(dims.aspects), idx(dims.aspects));
  p.effect_to_aspect = RowMatrix::Zero(idx(dims.aspects), idx(dims.aspects));
  p.similarity_to_aspect = RowMatrix::Zero(idx(dims.rep_dim()), idx(dims.aspects));
  p.bias = Vector::Zero(idx(dims.aspects));
  p.structural = RowMatrix::Zero(idx(num_nodes), idx(dims.struct_dim));
  return p;
}

ModelParams ModelParams::initialize(const ModelDims& dims, std::size_t num_nodes, Rng& rng) {
  ModelParams p = zeros(dims, num_nodes);
  const double aspect_scale = 1.0 / std::sqrt(static_cast<double>(dims.aspects));
  fill_uniform(p.effect, aspect_scale, rng);
  fill_uniform(p.effect_to_aspect, aspect_scale, rng);
  fill_uniform(p.similarity_to_aspect, 1.0 / std::sqrt(static_cast<double>(dims.rep_dim())), rng);
  fill_uniform(p.structural, 0.5, rng);
  p.structural /= static_cast<double>(dims.struct_dim);
  return p;
}

void ModelParams::validate() const {
  const auto i = idx(dims.aspects);
  if (dims.aspects == 0 || dims.text_dim == 0 || dims.struct_dim == 0) {
    throw DataError("model dimensions must be positive");
  }
  if (effect.rows() != i || effect.cols() != i || effect_to_aspect.rows() != i ||
      effect_to_aspect.cols() != i || similarity_to_aspect.rows() != idx(dims.rep_dim()) ||
      similarity_to_aspect.cols() != i || bias.size() != i ||
      structural.cols() != idx(dims.struct_dim)) {
    throw DataError("model tensors do not match the declared dimensions");
  }
  if (!all_finite()) throw NumericError("model parameters contain non-finite values");
}

bool ModelParams::all_finite() const {
  return effect.allFinite() && effect_to_aspect.allFinite() && similarity_to_aspect.allFinite() &&
         bias.allFinite() && structural.allFinite();
}

NodeRepresentation node_representation(const Eigen::Ref<const Vector>& text,
                                       const Eigen::Ref<const Vector>& structural) {
  NodeRepresentation rep;
  rep.r.resize(text.size() + structural.size());
  rep.r << text, structural;
  rep.norm = rep.r.norm();
  if (rep.norm == 0.0) {
    rep.zero = true;
  } else {
    rep.r /= rep.norm;
  }
  return rep;
}

NodeRepresentation node_representation(NodeIndex i, const Eigen::Ref<const Vector>& text,
                                       const ModelParams& params) {
  if (text.size() != idx(params.dims.text_dim)) {
    throw DataError("text vector has length " + std::to_string(text.size()) + ", expected " +
                    std::to_string(params.dims.text_dim));
  }
  if (i >= params.num_nodes()) throw DomainError("node index out of range");
  return node_representation(text, params.structural.row(i).transpose());
}

Vector citation_effect(const Eigen::Ref<const Vector>& state_row, const ModelParams& params) {
  if (state_row.size() != idx(params.dims.aspects)) {
    throw DataError("aspect state row has the wrong length");
  }
  return params.effect * state_row;
}

Vector edge_similarity(const Vector& r_i, const Vector& r_j) {
  if (r_i.size() != r_j.size()) throw DataError("representation lengths differ");
  return r_i.cwiseProduct(r_j);
}

Vector aspect_impact(const Vector& effect, const Vector& similarity, const ModelParams& params) {
  if (effect.size() != idx(params.dims.aspects) || similarity.size() != idx(params.dims.rep_dim())) {
    throw DataError("aspect impact inputs do not match the model dimensions");
  }
  return params.effect_to_aspect.transpose() * effect +
         params.similarity_to_aspect.transpose() * similarity + params.bias;
}

Vector softmax(const Vector& logits) {
  Vector out = (logits.array() - logits.maxCoeff()).exp();
  return out / out.sum();
}

namespace {

std::size_t argmax_lowest(const Vector& v) {
  std::size_t best = 0;
  for (Eigen::Index k = 1; k < v.size(); ++k) {
    if (v[k] > v[idx(best)]) best = static_cast<std::size_t>(k);
  }
  return best;
}

}  // namespace

AspectSample sample_aspect(const Vector& impact, AspectMode mode, double temperature, Rng* rng) {
  if (impact.size() == 0) throw DataError("aspect impact is empty");
  if (!impact.allFinite()) throw NumericError("aspect impact contains non-finite values");
  if (!(temperature > 0.0)) throw DomainError("Gumbel temperature must be positive");

  AspectSample s;
  s.probabilities = softmax(impact);
  s.noise = Vector::Zero(impact.size());
  if (mode == AspectMode::kInfer) {
    // softmax is monotone, so argmax over the logits avoids rounding ties in pi.
    s.index = argmax_lowest(impact);
  } else {
    if (rng == nullptr) throw DomainError("train-mode aspect sampling needs a generator");
    for (Eigen::Index k = 0; k < impact.size(); ++k) s.noise[k] = rng->gumbel();
    // log pi_k = D_k - logsumexp(D); the shared constant does not move the argmax.
    const Vector perturbed = s.noise + impact;
    s.index = argmax_lowest(perturbed);
    s.relaxed = softmax(perturbed / temperature);
  }
  s.one_hot = Vector::Zero(impact.size());
  s.one_hot[idx(s.index)] = 1.0;
  if (mode == AspectMode::kInfer) s.relaxed = s.one_hot;
  return s;
}

Vector masked_impact(const Vector& alpha, const Vector& impact) {
  if (alpha.size() != impact.size()) throw DataError("alpha and impact lengths differ");
  return alpha.cwiseProduct(impact).cwiseMax(0.0);
}

double link_score(const Vector& effect, const Vector& similarity) {
  return effect.sum() + similarity.sum();
}

EdgeScore score_pair(NodeIndex i, NodeIndex j, const ModelView& model, AspectMode mode,
                     double temperature, Rng* rng) {
  if (i == j) throw DomainError("cannot score a self-pair (node " + std::to_string(i) + ")");
  const auto& params = model.params;
  if (model.text.rows() != idx(params.num_nodes()) || model.state.num_nodes() != params.num_nodes()) {
    throw DataError("text, state and parameters disagree on the node count");
  }
  EdgeScore s;
  s.source_rep = node_representation(i, model.text.row(i).transpose(), params);
  s.target_rep = node_representation(j, model.text.row(j).transpose(), params);
  s.effect = citation_effect(model.state.values.row(j).transpose(), params);
  s.similarity = edge_similarity(s.source_rep.r, s.target_rep.r);
  s.impact = aspect_impact(s.effect, s.similarity, params);
  s.aspect = sample_aspect(s.impact, mode, temperature, rng);
  s.masked = masked_impact(s.aspect.one_hot, s.impact);
  s.score = link_score(s.effect, s.similarity);
  return s;
}

}  // namespace patsteg
