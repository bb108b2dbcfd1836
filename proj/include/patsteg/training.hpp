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
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "patsteg/corpus.hpp"
#include "patsteg/graph.hpp"
#include "patsteg/model.hpp"
#include "patsteg/propagation.hpp"
#include "patsteg/rng.hpp"

namespace patsteg {

struct TrainConfig {
  std::size_t aspects = 5;
  std::size_t struct_dim = 100;
  double margin_edge = 1.0;         // lambda_e
  double margin_aspect = 1.0;       // lambda_t
  double aspect_loss_weight = 1.0;  // weight of the aspect hinge in the total loss
  double learning_rate = 0.05;
  double momentum = 0.0;
  std::size_t epochs = 20;          // per S_Y phase
  std::size_t batch_size = 32;
  std::size_t alternations = 3;     // Q
  std::uint32_t negatives_per_positive = 1;
  double temperature = 1.0;
  bool dynamic_propagation = true;  // DP when set, NDP otherwise
  bool straight_through = false;
  /// Cumulative snapshot cutoffs, trained in ascending order. Empty means a
  /// single pass over all train edges.
  std::vector<Timestamp> snapshots;
  std::size_t propagation_steps = 100;
  double propagation_epsilon = 1e-8;
  /// Size of the fixed batch whose loss is traced after every epoch.
  std::size_t trace_batch_size = 1024;
  std::uint64_t seed = 0;

  /// Throws UsageError naming the offending field.
  void validate() const;
  nlohmann::json to_json() const;
};

struct Triplet {
  NodeIndex source = 0;
  NodeIndex positive = 0;
  NodeIndex negative = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// max(0, lambda_e - (F_ij - F_ik)).
double loss_edge(double score_positive, double score_negative, double margin);

/// max(0, lambda_t - (alpha . D_ij - alpha . D_ik)), alpha from the positive pair.
double loss_aspect(const Vector& impact_positive, const Vector& impact_negative,
                   const Vector& alpha, double margin);

struct TripletSampleStats {
  std::size_t skipped = 0;  // draws whose source cites every other node
};

/// Draws `batch` triplets: a train edge uniformly, then a uniformly random
/// node the source does not cite (in the full graph). Sources that cite
/// every other node are skipped and counted.
std::vector<Triplet> sample_triplets(std::span<const NodePair> train_edges,
                                     const CitationGraph& graph, std::size_t batch, Rng& rng,
                                     TripletSampleStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Losses and gradients

struct TripletForward {
  Triplet triplet;
  EdgeScore positive;
  EdgeScore negative;
  /// Aspect selection that conditions the aspect hinge.
  Vector alpha;
  double edge_loss = 0.0;
  double aspect_loss = 0.0;
  double total = 0.0;
};

/// Scores both pairs of a triplet. The positive pair's aspect is drawn in
/// `mode`; the negative pair is always scored in infer mode. When
/// `frozen_alpha` is given it replaces the drawn selection.
TripletForward forward_triplet(const Triplet& t, const ModelView& model, const TrainConfig& config,
                               AspectMode mode, Rng* gumbel, const Vector* frozen_alpha = nullptr);

/// Dense accumulators shaped like ModelParams, with touched structural rows
/// tracked so a reset only clears what was written.
class ParamGradient {
 public:
  ParamGradient(const ModelDims& dims, std::size_t num_nodes);

  RowMatrix effect;
  RowMatrix effect_to_aspect;
  RowMatrix similarity_to_aspect;
  Vector bias;
  RowMatrix structural;

  void add_structural(NodeIndex i, const Eigen::Ref<const Vector>& g);
  const std::vector<NodeIndex>& touched_rows() const { return touched_rows_; }
  void reset();

 private:
  std::vector<char> touched_;
  std::vector<NodeIndex> touched_rows_;
};

/// Adds weight * d(total loss)/d(params) for one triplet. With
/// config.straight_through and a train-mode forward, the aspect hinge also
/// differentiates through the tempered-softmax relaxation of alpha.
void backward_triplet(const TripletForward& fwd, const ModelView& model, const TrainConfig& config,
                      double weight, ParamGradient& grad);

/// Mean total loss over triplets, infer mode.
double mean_triplet_loss(std::span<const Triplet> triplets, const ModelView& model,
                         const TrainConfig& config);

// ---------------------------------------------------------------------------
// Alternating optimization

struct TrainingData {
  const CitationGraph& graph;
  const RowMatrix& text;
  /// Edges the phases learn from (train split, or its snapshot).
  std::span<const NodePair> train_edges;
};

struct SyPhaseReport {
  std::vector<double> epoch_losses;  // mean sampled loss per epoch
  std::vector<double> trace_losses;  // fixed-batch loss before training and after each epoch
  std::size_t triplets = 0;
  std::size_t skipped = 0;
};

/// System S_Y: SGD on the scoring parameters with the aspect state fixed.
/// Throws NumericError with diagnostics on a non-finite loss.
SyPhaseReport train_sy_phase(ModelParams& params, const AspectState& state,
                             const TrainingData& data, const TrainConfig& config,
                             std::span<const Triplet> trace_batch, Rng& triplet_rng, Rng& gumbel_rng);

struct SdPhaseReport {
  std::size_t steps = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> residuals;
};

/// System S_D: infer-mode impacts on every train edge, a fresh transition
/// tensor, then propagation from the current state.
AspectState train_sd_phase(const ModelParams& params, const AspectState& state,
                           const TrainingData& data, const TrainConfig& config,
                           SdPhaseReport* report = nullptr);

struct FitResult {
  ModelParams params;
  AspectState state;
  double state_residual = 0.0;
  bool state_converged = false;
  std::size_t sy_phases = 0;
  std::size_t sd_phases = 0;
  double final_train_loss = 0.0;
  /// Losses, residuals, seeds, config echo. Wall-clock values live under
  /// "wall_clock_seconds" keys.
  nlohmann::json report;
};

/// Alternates S_Y and S_D `alternations` times (S_Y only for NDP), once per
/// snapshot cutoff when a schedule is configured.
FitResult fit(const CitationGraph& graph, const DatasetSplit& split, const RowMatrix& text,
              const TrainConfig& config);

}  // namespace patsteg
