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

#include <fstream>

#include "patsteg/checkpoint.hpp"
#include "patsteg/error.hpp"
#include "support/synthetic.hpp"

namespace patsteg {
namespace {

Checkpoint sample_checkpoint() {
  Rng rng(1);
  Checkpoint cp;
  cp.params = ModelParams::initialize({3, 4, 2}, 5, rng);
  cp.params.bias << 0.1, -1.0 / 3.0, 1e-300;
  cp.node_ids = {"a", "b", "c", "d", "e"};
  cp.seed_lineage = {{"root", 7}, {"init", 123}};
  return cp;
}

TEST(Checkpoint, RoundTripIsExact) {
  const auto cp = sample_checkpoint();
  const auto back = checkpoint_from_json(nlohmann::json::parse(dump_json(checkpoint_to_json(cp))));
  EXPECT_EQ(back.params.dims, cp.params.dims);
  EXPECT_EQ(back.params.effect, cp.params.effect);
  EXPECT_EQ(back.params.effect_to_aspect, cp.params.effect_to_aspect);
  EXPECT_EQ(back.params.similarity_to_aspect, cp.params.similarity_to_aspect);
  EXPECT_EQ(back.params.bias, cp.params.bias);
  EXPECT_EQ(back.params.structural, cp.params.structural);
  EXPECT_EQ(back.node_ids, cp.node_ids);
  EXPECT_EQ(back.seed_lineage, cp.seed_lineage);
  EXPECT_EQ(dump_json(checkpoint_to_json(back)), dump_json(checkpoint_to_json(cp)));
}

TEST(Checkpoint, FileRoundTrip) {
  const auto dir = testing::scratch_dir("checkpoint");
  const auto cp = sample_checkpoint();
  save_checkpoint(cp, dir / "cp.json");
  EXPECT_EQ(checkpoint_to_json(load_checkpoint(dir / "cp.json")), checkpoint_to_json(cp));

  StateCheckpoint st{initialize_state(5, 3), 1e-9, true};
  st.state.values(0, 0) = 0.1;
  st.state.values(1, 0) = 0.3;
  save_state(st, dir / "state.json");
  const auto back = load_state(dir / "state.json");
  EXPECT_EQ(back.state.values, st.state.values);
  EXPECT_EQ(back.residual, st.residual);
  EXPECT_TRUE(back.converged);
}

TEST(Checkpoint, MalformedInputIsDataError) {
  const auto good = checkpoint_to_json(sample_checkpoint());
  for (const char* key : {"format", "dims", "num_nodes", "node_ids", "tensors"}) {
    auto j = good;
    j.erase(key);
    EXPECT_THROW(checkpoint_from_json(j), DataError) << key;
  }
  for (const char* tensor : {"effect", "effect_to_aspect", "similarity_to_aspect", "bias", "structural"}) {
    auto j = good;
    j["tensors"].erase(tensor);
    EXPECT_THROW(checkpoint_from_json(j), DataError) << tensor;
  }
  auto j = good;
  j["tensors"]["bias"]["data"] = nlohmann::json::array({1.0});
  EXPECT_THROW(checkpoint_from_json(j), DataError);
  j = good;
  j["tensors"]["effect"]["data"][0] = "x";
  EXPECT_THROW(checkpoint_from_json(j), DataError);
  j = good;
  j["node_ids"].push_back("f");
  EXPECT_THROW(checkpoint_from_json(j), DataError);
  EXPECT_THROW(checkpoint_from_json(nlohmann::json("text")), DataError);

  const auto dir = testing::scratch_dir("checkpoint_bad");
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(load_checkpoint(dir / "bad.json"), DataError);
  EXPECT_THROW(load_checkpoint(dir / "missing.json"), DataError);
  EXPECT_THROW(load_state(dir / "bad.json"), DataError);
}

}  // namespace
}  // namespace patsteg
