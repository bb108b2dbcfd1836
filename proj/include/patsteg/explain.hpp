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
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "patsteg/corpus.hpp"
#include "patsteg/graph.hpp"
#include "patsteg/model.hpp"

namespace patsteg {

struct ExplainedCiter {
  std::string citer;
  /// alpha . D_ij for the citer's infer-mode aspect.
  double score = 0.0;
  std::size_t rank = 0;  // 1-based within the aspect

  friend bool operator==(const ExplainedCiter&, const ExplainedCiter&) = default;
};

struct TermCount {
  std::string token;
  std::size_t documents = 0;

  friend bool operator==(const TermCount&, const TermCount&) = default;
};

struct AspectGroup {
  std::size_t aspect = 0;
  /// Citers assigned to this aspect before truncation.
  std::size_t assigned = 0;
  std::vector<ExplainedCiter> citers;
  std::vector<TermCount> terms;

  friend bool operator==(const AspectGroup&, const AspectGroup&) = default;
};

struct AspectExplanation {
  std::string target;
  /// One group per aspect, in aspect order, possibly empty.
  std::vector<AspectGroup> aspects;
  std::string note;

  friend bool operator==(const AspectExplanation&, const AspectExplanation&) = default;
};

struct ExplainOptions {
  std::size_t top_n = 5;
  std::size_t top_m = 10;
  ChannelSet channels{Channel::kTitle, Channel::kAbstract, Channel::kClaim};
};

/// Groups the citers of `target` by infer-mode aspect, ranks each group by
/// alpha . D_ij descending (node index breaks ties), keeps the top_n, and
/// lists the top_m tokens by document frequency over the kept citers
/// (alphabetical on ties). A target nobody cites yields empty groups and a
/// note.
AspectExplanation explain_target(NodeIndex target, const ModelView& model,
                                 const CitationGraph& graph, const DocumentMap& docs,
                                 const ExplainOptions& options);

enum class ExplainFormat { kJson, kCsv };

nlohmann::json explanation_to_json(const AspectExplanation& exp);
/// Throws DataError on schema problems.
AspectExplanation explanation_from_json(const nlohmann::json& j);
/// Header `aspect,rank,citer,score`, one row per listed citer.
std::string explanation_to_csv(const AspectExplanation& exp);

/// Atomic write in the requested format.
void export_explanation(const AspectExplanation& exp, const std::filesystem::path& path,
                        ExplainFormat format);

}  // namespace patsteg
