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

#include "patsteg/explain.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "patsteg/checkpoint.hpp"
#include "patsteg/error.hpp"
#include "patsteg/io.hpp"

namespace patsteg {

AspectExplanation explain_target(NodeIndex target, const ModelView& model,
                                 const CitationGraph& graph, const DocumentMap& docs,
                                 const ExplainOptions& options) {
  if (target >= graph.num_nodes()) throw DomainError("explain target is out of range");
  if (model.params.num_nodes() != graph.num_nodes()) {
    throw DataError("checkpoint and graph disagree on the number of nodes");
  }
  const std::size_t aspects = model.params.dims.aspects;
  AspectExplanation exp;
  exp.target = graph.node_id(target);
  exp.aspects.resize(aspects);
  for (std::size_t k = 0; k < aspects; ++k) exp.aspects[k].aspect = k;

  const auto citers = graph.in_neighbors(target);
  if (citers.empty()) {
    exp.note = "target has no citers";
    return exp;
  }

  struct Scored {
    NodeIndex citer;
    double score;
  };
  std::vector<std::vector<Scored>> groups(aspects);
  for (NodeIndex i : citers) {
    const auto s = score_pair(i, target, model, AspectMode::kInfer);
    const std::size_t k = s.aspect.index;
    groups[k].push_back({i, s.impact[static_cast<Eigen::Index>(k)]});
  }

  for (std::size_t k = 0; k < aspects; ++k) {
    auto& g = groups[k];
    std::sort(g.begin(), g.end(), [](const Scored& a, const Scored& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.citer < b.citer;
    });
    auto& out = exp.aspects[k];
    out.assigned = g.size();
    const std::size_t kept = std::min(options.top_n, g.size());
    std::map<std::string, std::size_t> frequency;
    for (std::size_t r = 0; r < kept; ++r) {
      const auto& id = graph.node_id(g[r].citer);
      out.citers.push_back({id, g[r].score, r + 1});
      const auto doc = docs.find(id);
      if (doc == docs.end()) continue;
      std::set<std::string> seen;
      for (Channel c : options.channels.channels()) {
        const auto tokens = doc->second.channels.find(c);
        if (tokens == doc->second.channels.end()) continue;
        seen.insert(tokens->second.begin(), tokens->second.end());
      }
      for (const auto& t : seen) ++frequency[t];
    }
    std::vector<TermCount> terms;
    for (const auto& [token, count] : frequency) terms.push_back({token, count});
    // std::map iteration is alphabetical, so a stable sort keeps ties in order.
    std::stable_sort(terms.begin(), terms.end(),
                     [](const TermCount& a, const TermCount& b) { return a.documents > b.documents; });
    if (terms.size() > options.top_m) terms.resize(options.top_m);
    out.terms = std::move(terms);
  }
  return exp;
}

nlohmann::json explanation_to_json(const AspectExplanation& exp) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : exp.aspects) {
    nlohmann::json citers = nlohmann::json::array();
    for (const auto& c : g.citers) {
      citers.push_back({{"citer", c.citer}, {"rank", c.rank}, {"score", c.score}});
    }
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : g.terms) terms.push_back({{"token", t.token}, {"documents", t.documents}});
    groups.push_back({{"aspect", g.aspect},
                      {"assigned", g.assigned},
                      {"citers", std::move(citers)},
                      {"terms", std::move(terms)}});
  }
  return {{"format", "patsteg.explanation"},
          {"version", 1},
          {"target", exp.target},
          {"note", exp.note},
          {"aspects", std::move(groups)}};
}

AspectExplanation explanation_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "patsteg.explanation") {
      throw DataError("not an explanation file");
    }
    if (j.at("version").get<int>() != 1) throw DataError("unsupported explanation version");
    AspectExplanation exp;
    exp.target = j.at("target").get<std::string>();
    exp.note = j.at("note").get<std::string>();
    for (const auto& g : j.at("aspects")) {
      AspectGroup group;
      group.aspect = g.at("aspect").get<std::size_t>();
      group.assigned = g.at("assigned").get<std::size_t>();
      for (const auto& c : g.at("citers")) {
        group.citers.push_back({c.at("citer").get<std::string>(), c.at("score").get<double>(),
                                c.at("rank").get<std::size_t>()});
      }
      for (const auto& t : g.at("terms")) {
        group.terms.push_back({t.at("token").get<std::string>(), t.at("documents").get<std::size_t>()});
      }
      exp.aspects.push_back(std::move(group));
    }
    return exp;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed explanation: ") + e.what());
  }
}

std::string explanation_to_csv(const AspectExplanation& exp) {
  std::ostringstream os;
  os.precision(17);
  os << "aspect,rank,citer,score\n";
  for (const auto& g : exp.aspects) {
    for (const auto& c : g.citers) {
      os << g.aspect << ',' << c.rank << ',' << c.citer << ',' << c.score << '\n';
    }
  }
  return os.str();
}

void export_explanation(const AspectExplanation& exp, const std::filesystem::path& path,
                        ExplainFormat format) {
  write_file_atomic(path, format == ExplainFormat::kJson ? dump_json(explanation_to_json(exp))
                                                         : explanation_to_csv(exp));
}

}  // namespace patsteg
