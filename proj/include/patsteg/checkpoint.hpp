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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "patsteg/model.hpp"
#include "patsteg/propagation.hpp"

namespace patsteg {

/// Parameter checkpoint: dims, every tensor in row-major order, the node
/// order the structural rows follow, and the seed lineage that produced it.
struct Checkpoint {
  ModelParams params;
  std::vector<std::string> node_ids;
  nlohmann::json seed_lineage = nlohmann::json::object();
};

nlohmann::json checkpoint_to_json(const Checkpoint& checkpoint);
/// Throws DataError on any schema problem.
Checkpoint checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

struct StateCheckpoint {
  AspectState state;
  double residual = 0.0;
  bool converged = false;
};

nlohmann::json state_to_json(const StateCheckpoint& state);
StateCheckpoint state_from_json(const nlohmann::json& j);

void save_state(const StateCheckpoint& state, const std::filesystem::path& path);
StateCheckpoint load_state(const std::filesystem::path& path);

/// Serializes with a trailing newline; doubles round-trip exactly.
std::string dump_json(const nlohmann::json& j);
/// Parses a JSON file, wrapping syntax errors in DataError.
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace patsteg
