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
#include <limits>
#include <span>
#include <vector>

#include "patsteg/corpus.hpp"
#include "patsteg/graph.hpp"

namespace patsteg {

/// N x I matrix of per-node, per-aspect influence. Every column is a
/// probability distribution over nodes.
struct AspectState {
  RowMatrix values;
  std::size_t iteration = 0;

  std::size_t num_nodes() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t aspects() const { return static_cast<std::size_t>(values.cols()); }
  double column_sum(std::size_t k) const { return values.col(static_cast<Eigen::Index>(k)).sum(); }

  /// Throws DomainError if an entry leaves [0, 1] (beyond `tol`) or a column
  /// sum deviates from 1 by more than `tol`.
  void validate(double tol = 1e-9) const;
};

/// Every column uniform 1/N.
AspectState initialize_state(std::size_t num_nodes, std::size_t aspects);

/// Per-aspect column-normalized transition weights over the train edges.
///
/// Stored as CSR by citing node i: entry (i, j) carries, for aspect k,
/// Y_k(i->j) / sum over citers i' of j of Y_k(i'->j). Columns with no mass
/// for an aspect are all-zero and listed in dangling(k).
class TransitionTensor {
 public:
  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t aspects() const { return aspects_; }
  std::size_t nnz() const { return columns_.size(); }

  /// Weight at (i, j, k); 0 when i does not cite j.
  double entry(NodeIndex i, NodeIndex j, std::size_t k) const;
  /// Columns with no aspect-k mass, ascending.
  const std::vector<NodeIndex>& dangling(std::size_t k) const { return dangling_[k]; }

  /// out = X(:, :, k) * in.
  void multiply(std::size_t k, std::span<const double> in, std::span<double> out) const;

 private:
  friend TransitionTensor build_transition(std::size_t, std::size_t, std::span<const NodePair>,
                                           const RowMatrix&);
  std::size_t num_nodes_ = 0;
  std::size_t aspects_ = 0;
  std::vector<std::size_t> row_offsets_;
  std::vector<NodeIndex> columns_;
  std::vector<double> weights_;  // nnz x aspects
  std::vector<std::vector<NodeIndex>> dangling_;
};

/// `impacts` row e is the nonnegative impact vector Y for edges[e]. Throws
/// DomainError on negative or non-finite impacts and on duplicate edges.
TransitionTensor build_transition(std::size_t num_nodes, std::size_t aspects,
                                  std::span<const NodePair> edges, const RowMatrix& impacts);

/// P = beta * E + nu * (X + Z), applied per aspect without materializing P.
struct ProjectionOperator {
  double beta = 0.0;
  double nu = 0.0;
  TransitionTensor transition;

  /// beta = 0.05 / N and nu = 1 - beta * N, which makes every column of P sum to 1.
  static ProjectionOperator standard(TransitionTensor transition);

  std::size_t num_nodes() const { return transition.num_nodes(); }
  std::size_t aspects() const { return transition.aspects(); }

  /// Dense P(:, :, k). Only for small N.
  RowMatrix dense(std::size_t k) const;
};

/// One propagation step D' = P D. Throws DomainError when an input column
/// sum is off by more than 1e-6.
AspectState apply_projection(const ProjectionOperator& op, const AspectState& state);

struct PropagationResult {
  AspectState state;
  std::size_t steps = 0;
  /// max over aspects of the L1 change in the last step; +inf if no step ran.
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::vector<double> residuals;
};

/// Power iteration until the residual drops below epsilon or max_steps.
PropagationResult propagate(const ProjectionOperator& op, const AspectState& initial,
                            std::size_t max_steps, double epsilon);

}  // namespace patsteg
