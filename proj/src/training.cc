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

#include "patsteg/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "patsteg/error.hpp"

namespace patsteg {

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw UsageError(std::string("invalid training config: ") + what);
  };
  require(aspects >= 1, "aspects must be >= 1");
  require(struct_dim >= 1, "struct_dim must be >= 1");
  require(margin_edge > 0.0 && std::isfinite(margin_edge), "margin_edge must be > 0");
  require(margin_aspect > 0.0 && std::isfinite(margin_aspect), "margin_aspect must be > 0");
  require(aspect_loss_weight >= 0.0 && std::isfinite(aspect_loss_weight),
          "aspect_loss_weight must be >= 0");
  require(learning_rate >= 0.0 && std::isfinite(learning_rate), "learning_rate must be >= 0");
  require(momentum >= 0.0 && momentum < 1.0, "momentum must be in [0, 1)");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(alternations >= 1, "alternations must be >= 1");
  require(negatives_per_positive >= 1, "negatives_per_positive must be >= 1");
  require(temperature > 0.0 && std::isfinite(temperature), "temperature must be > 0");
  require(propagation_epsilon > 0.0, "propagation_epsilon must be > 0");
  require(std::is_sorted(snapshots.begin(), snapshots.end()), "snapshots must be ascending");
}

nlohmann::json TrainConfig::to_json() const {
  return {{"aspects", aspects},
          {"struct_dim", struct_dim},
          {"margin_edge", margin_edge},
          {"margin_aspect", margin_aspect},
          {"aspect_loss_weight", aspect_loss_weight},
          {"learning_rate", learning_rate},
          {"momentum", momentum},
          {"epochs", epochs},
          {"batch_size", batch_size},
          {"alternations", alternations},
          {"negatives_per_positive", negatives_per_positive},
          {"temperature", temperature},
          {"variant", dynamic_propagation ? "dp" : "ndp"},
          {"straight_through", straight_through},
          {"snapshots", snapshots},
          {"propagation_steps", propagation_steps},
          {"propagation_epsilon", propagation_epsilon},
          {"trace_batch_size", trace_batch_size},
          {"seed", seed}};
}

std::vector<Triplet> sample_triplets(std::span<const NodePair> train_edges,
                                     const CitationGraph& graph, std::size_t batch, Rng& rng,
                                     TripletSampleStats* stats) {
  std::vector<Triplet> out;
  if (batch == 0) return out;
  if (train_edges.empty()) throw DomainError("cannot sample triplets from an empty train set");
  out.reserve(batch);
  const std::size_t n = graph.num_nodes();
  std::size_t skipped = 0;
  for (std::size_t b = 0; b < batch; ++b) {
    const NodePair edge = train_edges[rng.uniform_index(train_edges.size())];
    const std::size_t cited = graph.out_degree(edge.source);
    if (cited + 1 >= n) {
      ++skipped;
      continue;
    }
    NodeIndex negative = 0;
    if (2 * (cited + 1) <= n) {
      do {
        negative = static_cast<NodeIndex>(rng.uniform_index(n));
      } while (negative == edge.source || graph.has_edge(edge.source, negative));
    } else {
      // Dense source: pick the r-th node it does not cite.
      std::size_t r = rng.uniform_index(n - cited - 1);
      for (NodeIndex k = 0; k < n; ++k) {
        if (k == edge.source || graph.has_edge(edge.source, k)) continue;
        if (r-- == 0) {
          negative = k;
          break;
        }
      }
    }
    out.push_back({edge.source, edge.target, negative});
  }
  if (stats) stats->skipped += skipped;
  return out;
}

namespace {

std::string diagnostics(const ModelParams& params, const Triplet& t, const TripletForward& f) {
  std::ostringstream os;
  os << "non-finite loss on triplet (" << t.source << ", " << t.positive << ", " << t.negative
     << "): edge=" << f.edge_loss << " aspect=" << f.aspect_loss
     << "; parameter norms: effect=" << params.effect.norm()
     << " effect_to_aspect=" << params.effect_to_aspect.norm()
     << " similarity_to_aspect=" << params.similarity_to_aspect.norm()
     << " bias=" << params.bias.norm() << " structural=" << params.structural.norm();
  return os.str();
}

struct Velocity {
  RowMatrix effect, effect_to_aspect, similarity_to_aspect, structural;
  Vector bias;
};

void sgd_step(ModelParams& params, ParamGradient& grad, double step, double momentum,
              std::optional<Velocity>& velocity) {
  if (momentum == 0.0) {
    params.effect -= step * grad.effect;
    params.effect_to_aspect -= step * grad.effect_to_aspect;
    params.similarity_to_aspect -= step * grad.similarity_to_aspect;
    params.bias -= step * grad.bias;
    for (NodeIndex i : grad.touched_rows()) params.structural.row(i) -= step * grad.structural.row(i);
    return;
  }
  if (!velocity) {
    velocity = Velocity{RowMatrix::Zero(params.effect.rows(), params.effect.cols()),
                        RowMatrix::Zero(params.effect_to_aspect.rows(), params.effect_to_aspect.cols()),
                        RowMatrix::Zero(params.similarity_to_aspect.rows(),
                                        params.similarity_to_aspect.cols()),
                        RowMatrix::Zero(params.structural.rows(), params.structural.cols()),
                        Vector::Zero(params.bias.size())};
  }
  auto& v = *velocity;
  v.effect = momentum * v.effect + grad.effect;
  v.effect_to_aspect = momentum * v.effect_to_aspect + grad.effect_to_aspect;
  v.similarity_to_aspect = momentum * v.similarity_to_aspect + grad.similarity_to_aspect;
  v.bias = momentum * v.bias + grad.bias;
  v.structural = momentum * v.structural + grad.structural;
  params.effect -= step * v.effect;
  params.effect_to_aspect -= step * v.effect_to_aspect;
  params.similarity_to_aspect -= step * v.similarity_to_aspect;
  params.bias -= step * v.bias;
  params.structural -= step * v.structural;
}

}  // namespace

SyPhaseReport train_sy_phase(ModelParams& params, const AspectState& state,
                             const TrainingData& data, const TrainConfig& config,
                             std::span<const Triplet> trace_batch, Rng& triplet_rng,
                             Rng& gumbel_rng) {
  config.validate();
  SyPhaseReport report;
  const ModelView model{data.text, state, params};
  report.trace_losses.push_back(mean_triplet_loss(trace_batch, model, config));
  if (data.train_edges.empty()) return report;

  const std::size_t per_epoch = data.train_edges.size() * config.negatives_per_positive;
  ParamGradient grad(params.dims, params.num_nodes());
  std::optional<Velocity> velocity;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_sum = 0.0;
    std::size_t epoch_count = 0;
    for (std::size_t done = 0; done < per_epoch; done += config.batch_size) {
      const std::size_t want = std::min(config.batch_size, per_epoch - done);
      TripletSampleStats stats;
      const auto batch = sample_triplets(data.train_edges, data.graph, want, triplet_rng, &stats);
      report.skipped += stats.skipped;
      if (batch.empty()) continue;
      grad.reset();
      const double weight = 1.0 / static_cast<double>(batch.size());
      for (const auto& t : batch) {
        const auto fwd = forward_triplet(t, model, config, AspectMode::kTrain, &gumbel_rng);
        if (!std::isfinite(fwd.total)) throw NumericError(diagnostics(params, t, fwd));
        epoch_sum += fwd.total;
        backward_triplet(fwd, model, config, weight, grad);
      }
      epoch_count += batch.size();
      report.triplets += batch.size();
      if (config.learning_rate > 0.0) {
        sgd_step(params, grad, config.learning_rate, config.momentum, velocity);
      }
    }
    report.epoch_losses.push_back(epoch_count ? epoch_sum / static_cast<double>(epoch_count) : 0.0);
    report.trace_losses.push_back(mean_triplet_loss(trace_batch, model, config));
  }
  return report;
}

AspectState train_sd_phase(const ModelParams& params, const AspectState& state,
                           const TrainingData& data, const TrainConfig& config,
                           SdPhaseReport* report) {
  if (!params.all_finite()) throw NumericError("S_D phase received non-finite parameters");
  const ModelView model{data.text, state, params};
  const auto m = static_cast<Eigen::Index>(data.train_edges.size());
  RowMatrix impacts(m, static_cast<Eigen::Index>(params.dims.aspects));
  for (Eigen::Index e = 0; e < m; ++e) {
    const auto& edge = data.train_edges[static_cast<std::size_t>(e)];
    impacts.row(e) = score_pair(edge.source, edge.target, model, AspectMode::kInfer).masked.transpose();
  }
  auto op = ProjectionOperator::standard(
      build_transition(params.num_nodes(), params.dims.aspects, data.train_edges, impacts));
  auto result = propagate(op, state, config.propagation_steps, config.propagation_epsilon);
  if (report) {
    report->steps = result.steps;
    report->residual = result.residual;
    report->converged = result.converged;
    report->residuals = result.residuals;
  }
  return std::move(result.state);
}

namespace {

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

FitResult fit(const CitationGraph& graph, const DatasetSplit& split, const RowMatrix& text,
              const TrainConfig& config) {
  config.validate();
  if (text.rows() != static_cast<Eigen::Index>(graph.num_nodes())) {
    throw DataError("text embeddings do not cover every graph node");
  }
  if (split.train().empty()) throw DomainError("train split is empty");
  if (!config.snapshots.empty() && !graph.timed()) {
    throw DataError("a snapshot schedule needs a timed edge list");
  }
  const auto wall_start = std::chrono::steady_clock::now();

  ModelDims dims{config.aspects, static_cast<std::size_t>(text.cols()), config.struct_dim};
  Rng init_rng = Rng::stream(config.seed, "init");
  Rng triplet_rng = Rng::stream(config.seed, "negatives");
  Rng gumbel_rng = Rng::stream(config.seed, "gumbel");
  Rng trace_rng = Rng::stream(config.seed, "trace");

  FitResult result;
  result.params = ModelParams::initialize(dims, graph.num_nodes(), init_rng);
  result.state = initialize_state(graph.num_nodes(), dims.aspects);
  result.state_residual = std::numeric_limits<double>::infinity();

  const auto trace_batch = sample_triplets(
      split.train(), graph, std::min(config.trace_batch_size, split.train().size()), trace_rng);

  std::vector<std::optional<Timestamp>> schedule;
  if (config.snapshots.empty()) {
    schedule.push_back(std::nullopt);
  } else {
    schedule.assign(config.snapshots.begin(), config.snapshots.end());
  }

  nlohmann::json phases = nlohmann::json::array();
  for (const auto& cutoff : schedule) {
    std::vector<NodePair> edges;
    if (cutoff) {
      for (const auto& e : split.train()) {
        if (*graph.edge_time(e.source, e.target) <= *cutoff) edges.push_back(e);
      }
    } else {
      edges = split.train();
    }
    const TrainingData data{graph, text, edges};
    for (std::size_t q = 0; q < config.alternations; ++q) {
      const auto sy_start = std::chrono::steady_clock::now();
      auto sy = train_sy_phase(result.params, result.state, data, config, trace_batch, triplet_rng,
                               gumbel_rng);
      ++result.sy_phases;
      nlohmann::json sy_json = {
          {"system", "S_Y"},
          {"snapshot", cutoff ? nlohmann::json(*cutoff) : nlohmann::json(nullptr)},
          {"alternation", q},
          {"train_edges", edges.size()},
          {"triplets", sy.triplets},
          {"skipped_sources", sy.skipped},
          {"epoch_losses", sy.epoch_losses},
          {"trace_losses", sy.trace_losses},
          {"wall_clock_seconds",
           std::chrono::duration<double>(std::chrono::steady_clock::now() - sy_start).count()}};
      phases.push_back(std::move(sy_json));

      if (!config.dynamic_propagation) continue;
      const auto sd_start = std::chrono::steady_clock::now();
      SdPhaseReport sd;
      result.state = train_sd_phase(result.params, result.state, data, config, &sd);
      result.state_residual = sd.residual;
      result.state_converged = sd.converged;
      ++result.sd_phases;
      nlohmann::json residuals = nlohmann::json::array();
      for (double r : sd.residuals) residuals.push_back(r);
      phases.push_back(
          {{"system", "S_D"},
           {"snapshot", cutoff ? nlohmann::json(*cutoff) : nlohmann::json(nullptr)},
           {"alternation", q},
           {"steps", sd.steps},
           {"residual", finite_or_null(sd.residual)},
           {"converged", sd.converged},
           {"residuals", std::move(residuals)},
           {"wall_clock_seconds",
            std::chrono::duration<double>(std::chrono::steady_clock::now() - sd_start).count()}});
    }
  }

  const ModelView model{text, result.state, result.params};
  result.final_train_loss = mean_triplet_loss(trace_batch, model, config);
  result.report = {
      {"variant", config.dynamic_propagation ? "dp" : "ndp"},
      {"config", config.to_json()},
      {"seeds",
       {{"root", config.seed},
        {"init", Rng::stream(config.seed, "init").seed()},
        {"negatives", Rng::stream(config.seed, "negatives").seed()},
        {"gumbel", Rng::stream(config.seed, "gumbel").seed()},
        {"trace", Rng::stream(config.seed, "trace").seed()}}},
      {"num_nodes", graph.num_nodes()},
      {"train_edges", split.train().size()},
      {"sy_phases", result.sy_phases},
      {"sd_phases", result.sd_phases},
      {"phases", std::move(phases)},
      {"final_train_loss", result.final_train_loss},
      {"state_residual", finite_or_null(result.state_residual)},
      {"state_converged", result.state_converged},
      {"wall_clock_seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count()}};
  return result;
}

}  // namespace patsteg
