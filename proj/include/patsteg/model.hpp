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
#include <optional>

#include <Eigen/Core>

#include "patsteg/corpus.hpp"
#include "patsteg/graph.hpp"
#include "patsteg/propagation.hpp"
#include "patsteg/rng.hpp"

namespace patsteg {

using Vector = Eigen::VectorXd;

struct ModelDims {
  std::size_t aspects = 5;      // I
  std::size_t text_dim = 100;   // L_t
  std::size_t struct_dim = 100; // L_n

  std::size_t rep_dim() const { return text_dim + struct_dim; }  // L

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

/// Everything the scoring system learns.
struct ModelParams {
  ModelDims dims;
  RowMatrix effect;               // T^d, I x I: aspect state -> citation effect
  RowMatrix effect_to_aspect;     // W_c, I x I
  RowMatrix similarity_to_aspect; // W_e, L x I
  Vector bias;                    // b, I
  RowMatrix structural;           // n_i rows, N x L_n

  std::size_t num_nodes() const { return static_cast<std::size_t>(structural.rows()); }

  static ModelParams zeros(const ModelDims& dims, std::size_t num_nodes);

  /// Weights uniform in +-1/sqrt(fan_in), zero bias, structural rows
  /// uniform(-0.5, 0.5) / L_n.
  static ModelParams initialize(const ModelDims& dims, std::size_t num_nodes, Rng& rng);

  /// Throws DataError on inconsistent shapes, NumericError on non-finite entries.
  void validate() const;
  bool all_finite() const;
};

/// r_i = l2_normalize(t_i ++ n_i).
struct NodeRepresentation {
  Vector r;
  /// Norm of the concatenation before normalization.
  double norm = 0.0;
  /// Set when the concatenation was all-zero; r is then all-zero.
  bool zero = false;
};

NodeRepresentation node_representation(const Eigen::Ref<const Vector>& text,
                                       const Eigen::Ref<const Vector>& structural);
/// Throws DataError when `text` does not have length L_t.
NodeRepresentation node_representation(NodeIndex i, const Eigen::Ref<const Vector>& text,
                                       const ModelParams& params);

/// c = T^d d_j.
Vector citation_effect(const Eigen::Ref<const Vector>& state_row, const ModelParams& params);

/// e = r_i (Hadamard) r_j.
Vector edge_similarity(const Vector& r_i, const Vector& r_j);

/// D_ij = W_c^T c + W_e^T e + b.
Vector aspect_impact(const Vector& effect, const Vector& similarity, const ModelParams& params);

enum class AspectMode { kTrain, kInfer };

struct AspectSample {
  std::size_t index = 0;
  Vector one_hot;
  /// softmax(D): the class probabilities.
  Vector probabilities;
  /// Tempered softmax of (g + log pi) used for straight-through gradients.
  /// Equals one_hot in infer mode.
  Vector relaxed;
  /// Gumbel noise used (zeros in infer mode).
  Vector noise;
};

/// Softmax with the max subtracted.
Vector softmax(const Vector& logits);

/// Gumbel-max aspect selection. Infer mode is argmax of softmax(D) with
/// ties to the lowest index. Train mode draws from `rng`, which must be
/// non-null. Throws NumericError on non-finite input, DomainError on a
/// non-positive temperature.
AspectSample sample_aspect(const Vector& impact, AspectMode mode, double temperature, Rng* rng);

/// Y = max(alpha (Hadamard) D, 0).
Vector masked_impact(const Vector& alpha, const Vector& impact);

/// F = sum(c) + sum(e).
double link_score(const Vector& effect, const Vector& similarity);

enum class LinkScorer {
  kTotalImpact,   // F_ij
  kMaskedImpact,  // sum_k Y_ij[k]
};

struct EdgeScore {
  NodeRepresentation source_rep;
  NodeRepresentation target_rep;
  Vector effect;       // c
  Vector similarity;   // e
  Vector impact;       // D_ij
  AspectSample aspect; // alpha and its relaxation
  Vector masked;       // Y_ij
  double score = 0.0;  // F_ij

  const Vector& alpha() const { return aspect.one_hot; }
  double value(LinkScorer scorer) const {
    return scorer == LinkScorer::kTotalImpact ? score : masked.sum();
  }
};

/// Read-only bundle of what scoring needs.
struct ModelView {
  const RowMatrix& text;  // N x L_t
  const AspectState& state;
  const ModelParams& params;
};

/// Chains the operations above for the pair (i, j). Throws DomainError when
/// i == j. Deterministic in infer mode; rng may be null there.
EdgeScore score_pair(NodeIndex i, NodeIndex j, const ModelView& model, AspectMode mode,
                     double temperature = 1.0, Rng* rng = nullptr);

}  // namespace patsteg
