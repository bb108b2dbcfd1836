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

#include "patsteg/checkpoint.hpp"

#include <cmath>
#include <limits>

#include "patsteg/error.hpp"
#include "patsteg/io.hpp"

namespace patsteg {

namespace {

constexpr const char* kCheckpointFormat = "patsteg.checkpoint";
constexpr const char* kStateFormat = "patsteg.aspect_state";
constexpr int kVersion = 1;

template <typename Derived>
nlohmann::json tensor_to_json(const Eigen::MatrixBase<Derived>& m) {
  nlohmann::json j;
  j["shape"] = {m.rows(), m.cols()};
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  }
  j["data"] = std::move(data);
  return j;
}

RowMatrix tensor_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols,
                           const std::string& name) {
  const auto shape = j.at("shape").get<std::vector<Eigen::Index>>();
  if (shape.size() != 2 || shape[0] != rows || shape[1] != cols) {
    throw DataError("checkpoint tensor '" + name + "' has shape [" +
                    (shape.size() == 2 ? std::to_string(shape[0]) + ", " + std::to_string(shape[1])
                                       : std::string("?")) +
                    "], expected [" + std::to_string(rows) + ", " + std::to_string(cols) + "]");
  }
  const auto& data = j.at("data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw DataError("checkpoint tensor '" + name + "' has the wrong number of values");
  }
  RowMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& v = data[k++];
      if (!v.is_number()) throw DataError("checkpoint tensor '" + name + "' has a non-numeric value");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

void check_format(const nlohmann::json& j, const char* format) {
  if (!j.is_object() || !j.contains("format") || j.at("format") != format) {
    throw DataError(std::string("not a ") + format + " document");
  }
  if (j.at("version") != kVersion) {
    throw DataError(std::string(format) + ": unsupported version");
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json load_json(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }
}

nlohmann::json checkpoint_to_json(const Checkpoint& checkpoint) {
  const auto& p = checkpoint.params;
  nlohmann::json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kVersion;
  j["dims"] = {{"aspects", p.dims.aspects},
               {"text_dim", p.dims.text_dim},
               {"struct_dim", p.dims.struct_dim},
               {"rep_dim", p.dims.rep_dim()}};
  j["num_nodes"] = p.num_nodes();
  j["node_ids"] = checkpoint.node_ids;
  j["seed_lineage"] = checkpoint.seed_lineage;
  j["tensors"] = {{"effect", tensor_to_json(p.effect)},
                  {"effect_to_aspect", tensor_to_json(p.effect_to_aspect)},
                  {"similarity_to_aspect", tensor_to_json(p.similarity_to_aspect)},
                  {"bias", tensor_to_json(p.bias.transpose())},
                  {"structural", tensor_to_json(p.structural)}};
  return j;
}

Checkpoint checkpoint_from_json(const nlohmann::json& j) {
  check_format(j, kCheckpointFormat);
  try {
    Checkpoint out;
    ModelDims dims;
    dims.aspects = j.at("dims").at("aspects").get<std::size_t>();
    dims.text_dim = j.at("dims").at("text_dim").get<std::size_t>();
    dims.struct_dim = j.at("dims").at("struct_dim").get<std::size_t>();
    const auto n = j.at("num_nodes").get<std::size_t>();
    out.params = ModelParams::zeros(dims, n);
    out.node_ids = j.at("node_ids").get<std::vector<std::string>>();
    if (out.node_ids.size() != n) throw DataError("checkpoint node_ids length differs from num_nodes");
    out.seed_lineage = j.value("seed_lineage", nlohmann::json::object());
    const auto& t = j.at("tensors");
    const auto i = static_cast<Eigen::Index>(dims.aspects);
    out.params.effect = tensor_from_json(t.at("effect"), i, i, "effect");
    out.params.effect_to_aspect = tensor_from_json(t.at("effect_to_aspect"), i, i, "effect_to_aspect");
    out.params.similarity_to_aspect = tensor_from_json(
        t.at("similarity_to_aspect"), static_cast<Eigen::Index>(dims.rep_dim()), i,
        "similarity_to_aspect");
    out.params.bias = tensor_from_json(t.at("bias"), 1, i, "bias").row(0).transpose();
    out.params.structural = tensor_from_json(t.at("structural"), static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(dims.struct_dim), "structural");
    out.params.validate();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint schema error: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  write_file_atomic(path, dump_json(checkpoint_to_json(checkpoint)));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return checkpoint_from_json(load_json(path));
}

nlohmann::json state_to_json(const StateCheckpoint& state) {
  nlohmann::json j;
  j["format"] = kStateFormat;
  j["version"] = kVersion;
  j["num_nodes"] = state.state.num_nodes();
  j["aspects"] = state.state.aspects();
  j["iteration"] = state.state.iteration;
  // JSON has no infinity; a missing residual means no propagation step ran.
  if (std::isfinite(state.residual)) {
    j["residual"] = state.residual;
  } else {
    j["residual"] = nullptr;
  }
  j["converged"] = state.converged;
  j["values"] = tensor_to_json(state.state.values);
  return j;
}

StateCheckpoint state_from_json(const nlohmann::json& j) {
  check_format(j, kStateFormat);
  try {
    StateCheckpoint out;
    const auto n = j.at("num_nodes").get<Eigen::Index>();
    const auto aspects = j.at("aspects").get<Eigen::Index>();
    out.state.values = tensor_from_json(j.at("values"), n, aspects, "values");
    out.state.iteration = j.at("iteration").get<std::size_t>();
    const auto& residual = j.at("residual");
    out.residual = residual.is_null() ? std::numeric_limits<double>::infinity()
                                      : residual.get<double>();
    out.converged = j.at("converged").get<bool>();
    try {
      out.state.validate(1e-6);
    } catch (const DomainError& e) {
      throw DataError(std::string("aspect state file: ") + e.what());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("aspect state schema error: ") + e.what());
  }
}

void save_state(const StateCheckpoint& state, const std::filesystem::path& path) {
  write_file_atomic(path, dump_json(state_to_json(state)));
}

StateCheckpoint load_state(const std::filesystem::path& path) {
  return state_from_json(load_json(path));
}

}  // namespace patsteg
