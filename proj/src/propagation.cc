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

#include "patsteg/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "patsteg/error.hpp"

namespace patsteg {

void AspectState::validate(double tol) const {
  if (values.rows() == 0 || values.cols() == 0) throw DomainError("aspect state is empty");
  for (Eigen::Index k = 0; k < values.cols(); ++k) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      const double v = values(i, k);
      if (!(v >= -tol && v <= 1.0 + tol)) {
        throw DomainError("aspect state entry (" + std::to_string(i) + ", " + std::to_string(k) +
                          ") = " + std::to_string(v) + " is outside [0, 1]");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw DomainError("aspect state column " + std::to_string(k) + " sums to " +
                        std::to_string(sum));
    }
  }
}

AspectState initialize_state(std::size_t num_nodes, std::size_t aspects) {
  if (num_nodes == 0 || aspects == 0) throw DomainError("aspect state needs N >= 1 and I >= 1");
  AspectState state;
  state.values = RowMatrix::Constant(static_cast<Eigen::Index>(num_nodes),
                                     static_cast<Eigen::Index>(aspects),
                                     1.0 / static_cast<double>(num_nodes));
  return state;
}

double TransitionTensor::entry(NodeIndex i, NodeIndex j, std::size_t k) const {
  auto first = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_.at(i));
  auto last = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_.at(i + 1));
  auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  const auto slot = static_cast<std::size_t>(it - columns_.begin());
  return weights_[slot * aspects_ + k];
}

void TransitionTensor::multiply(std::size_t k, std::span<const double> in,
                                std::span<double> out) const {
  for (std::size_t i = 0; i < num_nodes_; ++i) {
    double acc = 0.0;
    for (std::size_t s = row_offsets_[i]; s < row_offsets_[i + 1]; ++s) {
      acc += weights_[s * aspects_ + k] * in[columns_[s]];
    }
    out[i] = acc;
  }
}

TransitionTensor build_transition(std::size_t num_nodes, std::size_t aspects,
                                  std::span<const NodePair> edges, const RowMatrix& impacts) {
  if (impacts.rows() != static_cast<Eigen::Index>(edges.size()) ||
      impacts.cols() != static_cast<Eigen::Index>(aspects)) {
    throw DataError("impact matrix must be |edges| x aspects");
  }
  TransitionTensor x;
  x.num_nodes_ = num_nodes;
  x.aspects_ = aspects;

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });

  std::vector<double> column_mass(num_nodes * aspects, 0.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.source >= num_nodes || edge.target >= num_nodes) {
      throw DataError("transition edge endpoint out of range");
    }
    for (std::size_t k = 0; k < aspects; ++k) {
      const double y = impacts(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(k));
      if (!(y >= 0.0) || !std::isfinite(y)) {
        throw DomainError("impact of edge " + std::to_string(edge.source) + "->" +
                          std::to_string(edge.target) + " is negative or non-finite");
      }
      column_mass[edge.target * aspects + k] += y;
    }
  }

  x.row_offsets_.assign(num_nodes + 1, 0);
  x.columns_.reserve(edges.size());
  x.weights_.reserve(edges.size() * aspects);
  for (std::size_t s = 0; s < order.size(); ++s) {
    const auto& edge = edges[order[s]];
    if (s > 0 && edges[order[s - 1]] == edge) throw DomainError("duplicate edge in transition input");
    ++x.row_offsets_[edge.source + 1];
    x.columns_.push_back(edge.target);
    for (std::size_t k = 0; k < aspects; ++k) {
      const double mass = column_mass[edge.target * aspects + k];
      const double y = impacts(static_cast<Eigen::Index>(order[s]), static_cast<Eigen::Index>(k));
      x.weights_.push_back(mass > 0.0 ? y / mass : 0.0);
    }
  }
  std::partial_sum(x.row_offsets_.begin(), x.row_offsets_.end(), x.row_offsets_.begin());

  x.dangling_.assign(aspects, {});
  for (std::size_t j = 0; j < num_nodes; ++j) {
    for (std::size_t k = 0; k < aspects; ++k) {
      if (!(column_mass[j * aspects + k] > 0.0)) x.dangling_[k].push_back(static_cast<NodeIndex>(j));
    }
  }
  return x;
}

ProjectionOperator ProjectionOperator::standard(TransitionTensor transition) {
  ProjectionOperator op;
  const double n = static_cast<double>(transition.num_nodes());
  op.beta = 0.05 / n;
  op.nu = 1.0 - op.beta * n;
  op.transition = std::move(transition);
  return op;
}

RowMatrix ProjectionOperator::dense(std::size_t k) const {
  const std::size_t n = num_nodes();
  RowMatrix p = RowMatrix::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), beta);
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = 0; j < n; ++j) p(i, j) += nu * transition.entry(i, j, k);
  }
  for (NodeIndex j : transition.dangling(k)) {
    for (NodeIndex i = 0; i < n; ++i) p(i, j) += nu / static_cast<double>(n);
  }
  return p;
}

AspectState apply_projection(const ProjectionOperator& op, const AspectState& state) {
  const std::size_t n = op.num_nodes();
  const std::size_t aspects = op.aspects();
  if (state.num_nodes() != n || state.aspects() != aspects) {
    throw DataError("aspect state shape does not match the projection operator");
  }
  AspectState next;
  next.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(aspects));
  next.iteration = state.iteration + 1;

  std::vector<double> column(n), product(n);
  for (std::size_t k = 0; k < aspects; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = state.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      total += column[i];
    }
    if (std::abs(total - 1.0) > 1e-6) {
      throw DomainError("aspect state column " + std::to_string(k) + " sums to " +
                        std::to_string(total) + ", expected 1");
    }
    double dangling_mass = 0.0;
    for (NodeIndex j : op.transition.dangling(k)) dangling_mass += column[j];
    op.transition.multiply(k, column, product);
    const double uniform = op.beta * total + op.nu * dangling_mass / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      next.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          uniform + op.nu * product[i];
    }
  }
  return next;
}

PropagationResult propagate(const ProjectionOperator& op, const AspectState& initial,
                            std::size_t max_steps, double epsilon) {
  PropagationResult result;
  result.state = initial;
  for (std::size_t step = 0; step < max_steps; ++step) {
    AspectState next = apply_projection(op, result.state);
    double residual = 0.0;
    for (Eigen::Index k = 0; k < next.values.cols(); ++k) {
      residual = std::max(residual, (next.values.col(k) - result.state.values.col(k)).lpNorm<1>());
    }
    result.state = std::move(next);
    result.residual = residual;
    result.residuals.push_back(residual);
    result.steps = step + 1;
    if (residual < epsilon) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace patsteg
