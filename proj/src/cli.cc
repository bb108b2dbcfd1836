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

#include "patsteg/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "patsteg/checkpoint.hpp"
#include "patsteg/corpus.hpp"
#include "patsteg/error.hpp"
#include "patsteg/eval.hpp"
#include "patsteg/explain.hpp"
#include "patsteg/graph.hpp"
#include "patsteg/io.hpp"
#include "patsteg/rng.hpp"
#include "patsteg/training.hpp"

namespace patsteg {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kSeedEnv = "PATSTEG_SEED";

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_digest(const fs::path& path) { return digest(read_file(path)); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// ---------------------------------------------------------------------------
// Option plumbing

struct Command {
  explicit Command(CLI::App* a) : app(a) {}

  CLI::App* app = nullptr;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
};

void add_common(Command& c) {
  c.app->add_option("--config", c.config_path, "flat key=value file; flags override it");
  c.app->add_option("--out-dir", c.out_dir, "directory for outputs");
  c.app->add_option("--seed", c.seed, std::string("root seed (also read from ") + kSeedEnv + ")");
}

void set_from_text(CLI::Option* opt, const std::string& value, const std::string& origin) {
  try {
    opt->add_result(value);
    opt->run_callback();
  } catch (const CLI::Error& e) {
    throw UsageError(origin + ": bad value '" + value + "' for " + opt->get_name() + ": " + e.what());
  }
}

// Environment first, then the config file, for options not given as flags.
void resolve_sources(Command& c) {
  CLI::Option* seed = c.app->get_option("--seed");
  if (seed->count() == 0) {
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
      set_from_text(seed, env, kSeedEnv);
    }
  }
  if (c.config_path.empty()) return;
  const std::string text = read_file(c.config_path);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_cr(line));
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(c.config_path, lineno, "expected key=value");
    std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    for (char& ch : key) {
      if (ch == '_') ch = '-';
    }
    if (key == "config") throw ParseError(c.config_path, lineno, "config files cannot nest");
    CLI::Option* opt = c.app->get_option_no_throw("--" + key);
    if (opt == nullptr) throw ParseError(c.config_path, lineno, "unknown key '" + key + "'");
    if (opt->count() == 0) set_from_text(opt, value, c.config_path + ":" + std::to_string(lineno));
  }
}

fs::path output_dir(const Command& c) {
  if (c.out_dir.empty()) throw UsageError("--out-dir is required");
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw DataError("cannot create output directory " + c.out_dir);
  return fs::path(c.out_dir);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  if (trim(text).empty()) return out;
  for (auto field : split_fields(text, ',')) {
    const std::string f = trim(field);
    T v{};
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw UsageError(std::string("bad ") + what + " entry '" + f + "'");
    }
    out.push_back(v);
  }
  return out;
}

// Input artifacts are echoed by file name and digest so output directories
// never leak into JSON.
json artifact(const std::string& path) {
  return {{"file", fs::path(path).filename().string()}, {"digest", file_digest(path)}};
}

void write_json(const fs::path& path, const json& j) { write_file_atomic(path, dump_json(j)); }

// ---------------------------------------------------------------------------
// Dataset loading

struct Dataset {
  CitationGraph graph;
  DocumentMap docs;
  ChannelSet channels;
  RowMatrix text;
  CorpusEmbeddingStats text_stats;
  std::size_t vocabulary = 0;
  EdgeListLoad edge_load;
};

Dataset load_dataset(const fs::path& edges, const fs::path& text, const fs::path& vectors,
                     const ChannelSet& channels) {
  Dataset d;
  d.edge_load = load_edge_list(edges);
  d.graph = build_graph(d.edge_load.edges);
  d.docs = load_node_text(text);
  const auto table = load_word_vectors(vectors);
  d.vocabulary = table.table.size();
  d.channels = channels;
  d.text = embed_corpus(d.graph, d.docs, channels, table.table, &d.text_stats);
  return d;
}

struct LoadedManifest {
  json manifest;
  Dataset data;
  DatasetSplit split;
};

LoadedManifest load_manifest(const std::string& path) {
  LoadedManifest m;
  m.manifest = load_json(path);
  try {
    if (m.manifest.at("format").get<std::string>() != "patsteg.manifest") {
      throw DataError(path + ": not a dataset manifest");
    }
    const auto& inputs = m.manifest.at("inputs");
    auto input = [&](const char* name) {
      const auto p = inputs.at(name).at("path").get<std::string>();
      if (file_digest(p) != inputs.at(name).at("digest").get<std::string>()) {
        throw DataError(p + " changed since ingest");
      }
      return fs::path(p);
    };
    const auto edges = input("edges");
    const auto text = input("text");
    const auto vectors = input("vectors");
    m.data = load_dataset(edges, text, vectors,
                          ChannelSet::parse(m.manifest.at("channels").get<std::string>()));
    m.split = split_from_json(m.manifest.at("split"), m.data.graph);
  } catch (const json::exception& e) {
    throw DataError(path + ": malformed manifest: " + e.what());
  }
  return m;
}

void check_checkpoint(const Checkpoint& ck, const CitationGraph& graph) {
  if (ck.node_ids != graph.node_ids()) {
    throw DataError("checkpoint node ids do not match the dataset");
  }
}

json histogram(const std::vector<std::size_t>& degrees) {
  std::map<std::size_t, std::size_t> counts;
  for (auto d : degrees) ++counts[d];
  json out = json::array();
  for (const auto& [d, c] : counts) out.push_back({d, c});
  return out;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestArgs {
  std::string edges, text, vectors;
  std::string channels = "title";
  std::string ratios = "0.85,0.05,0.10";
  std::uint32_t negatives_per_positive = 1;
};

int cmd_ingest(Command& c, const IngestArgs& a, std::ostream& out) {
  require(a.edges, "--edges");
  require(a.text, "--text");
  require(a.vectors, "--vectors");
  const auto ratio_list = parse_list<double>(a.ratios, "--ratios");
  if (ratio_list.size() != 3) throw UsageError("--ratios needs three comma-separated values");
  const ChannelSet channels = ChannelSet::parse(a.channels);
  const fs::path dir = output_dir(c);

  const auto edges = fs::absolute(a.edges).lexically_normal();
  const auto text = fs::absolute(a.text).lexically_normal();
  const auto vectors = fs::absolute(a.vectors).lexically_normal();
  Dataset d = load_dataset(edges, text, vectors, channels);
  const std::uint64_t split_seed = derive_seed(c.seed, "split");
  const DatasetSplit split = split_edges(d.graph, {ratio_list[0], ratio_list[1], ratio_list[2]},
                                         a.negatives_per_positive, split_seed);

  const auto& g = d.graph;
  const double n = static_cast<double>(g.num_nodes());
  std::vector<std::size_t> in_deg, out_deg;
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    in_deg.push_back(g.in_degree(i));
    out_deg.push_back(g.out_degree(i));
  }
  json counts = json::object();
  for (SplitName s : {SplitName::kTrain, SplitName::kValidation, SplitName::kTest}) {
    counts[std::string(split_name(s))] = {
        {"positives", split.positives[static_cast<int>(s)].size()},
        {"negatives", split.negatives_of(s).size()}};
  }
  const json config = {{"command", "ingest"},
                       {"edges", edges.string()},
                       {"text", text.string()},
                       {"vectors", vectors.string()},
                       {"channels", channels.to_string()},
                       {"ratios", ratio_list},
                       {"negatives_per_positive", a.negatives_per_positive},
                       {"seed", c.seed}};
  const json manifest = {
      {"format", "patsteg.manifest"},
      {"version", 1},
      {"inputs",
       {{"edges", {{"path", edges.string()}, {"digest", file_digest(edges)}}},
        {"text", {{"path", text.string()}, {"digest", file_digest(text)}}},
        {"vectors", {{"path", vectors.string()}, {"digest", file_digest(vectors)}}}}},
      {"channels", channels.to_string()},
      {"seed", c.seed},
      {"split_seed", split_seed},
      {"stats",
       {{"nodes", g.num_nodes()},
        {"edges", g.num_edges()},
        {"density", static_cast<double>(g.num_edges()) / (n * (n - 1.0))},
        {"duplicates_dropped", d.edge_load.duplicate_count},
        {"self_loops_dropped", d.edge_load.self_loop_count},
        {"timed", g.timed()},
        {"uncited_nodes", dangling_nodes(g).size()},
        {"in_degree_histogram", histogram(in_deg)},
        {"out_degree_histogram", histogram(out_deg)},
        {"text",
         {{"dimension", d.text.cols()},
          {"vocabulary", d.vocabulary},
          {"documents", d.docs.size()},
          {"nodes_without_text", d.text_stats.nodes_without_text},
          {"zero_vectors", d.text_stats.zero_vectors},
          {"tokens", d.text_stats.tokens},
          {"oov_tokens", d.text_stats.oov_tokens},
          {"oov_ratio", d.text_stats.oov_ratio()}}},
        {"split", counts}}},
      {"split", split_to_json(split, g)}};
  write_json(dir / "manifest.json", manifest);
  write_json(dir / "ingest_config.json", config);
  out << "ingested " << g.num_nodes() << " nodes, " << g.num_edges() << " edges\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string manifest;
  std::string variant = "dp";
  std::string snapshots;
  TrainConfig config;
};

int cmd_train(Command& c, TrainArgs& a, std::ostream& out) {
  require(a.manifest, "--manifest");
  if (a.variant != "dp" && a.variant != "ndp") throw UsageError("--variant must be dp or ndp");
  TrainConfig& config = a.config;
  config.dynamic_propagation = a.variant == "dp";
  config.snapshots = parse_list<Timestamp>(a.snapshots, "--snapshots");
  config.seed = c.seed;
  config.validate();
  const fs::path dir = output_dir(c);

  const auto m = load_manifest(a.manifest);
  const json echo = {{"command", "train"}, {"manifest", artifact(a.manifest)},
                     {"train", config.to_json()}};
  write_json(dir / "train_config.json", echo);

  FitResult fit_result = fit(m.data.graph, m.split, m.data.text, config);
  Checkpoint ck{fit_result.params, m.data.graph.node_ids(), fit_result.report.at("seeds")};
  save_checkpoint(ck, dir / "checkpoint.json");
  save_state({fit_result.state, fit_result.state_residual, fit_result.state_converged},
             dir / "state.json");
  write_json(dir / "train_report.json", fit_result.report);
  out << "trained " << a.variant << ": " << fit_result.sy_phases << " S_Y phases, "
      << fit_result.sd_phases << " S_D phases, final train loss " << fit_result.final_train_loss
      << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate / predict / explain share trained artifacts

struct ModelArgs {
  std::string manifest, checkpoint, state;
};

void add_model_options(CLI::App* app, ModelArgs& a) {
  app->add_option("--manifest", a.manifest, "manifest.json from ingest");
  app->add_option("--checkpoint", a.checkpoint, "checkpoint.json from train");
  app->add_option("--state", a.state, "state.json from train");
}

struct Trained {
  LoadedManifest m;
  Checkpoint ck;
  StateCheckpoint state;

  ModelView view() const { return {m.data.text, state.state, ck.params}; }
};

Trained load_trained(const ModelArgs& a) {
  require(a.manifest, "--manifest");
  require(a.checkpoint, "--checkpoint");
  require(a.state, "--state");
  Trained t{load_manifest(a.manifest), load_checkpoint(a.checkpoint), load_state(a.state)};
  check_checkpoint(t.ck, t.m.data.graph);
  if (t.state.state.num_nodes() != t.m.data.graph.num_nodes() ||
      t.state.state.aspects() != t.ck.params.dims.aspects) {
    throw DataError("state shape does not match the checkpoint");
  }
  if (static_cast<std::size_t>(t.m.data.text.cols()) != t.ck.params.dims.text_dim) {
    throw DataError("checkpoint text dimension does not match the dataset");
  }
  return t;
}

json model_echo(const ModelArgs& a) {
  return {{"manifest", artifact(a.manifest)},
          {"checkpoint", artifact(a.checkpoint)},
          {"state", artifact(a.state)}};
}

LinkScorer parse_scorer(const std::string& s) {
  if (s == "total") return LinkScorer::kTotalImpact;
  if (s == "masked") return LinkScorer::kMaskedImpact;
  throw UsageError("--scorer must be total or masked");
}

struct EvaluateArgs {
  ModelArgs model;
  std::string scorer = "total";
  std::string split = "test";
  std::size_t ranking_negatives = 50;
  std::string ks = "1,5,10";
  bool per_source = false;
};

int cmd_evaluate(Command& c, const EvaluateArgs& a, std::ostream& out) {
  EvalConfig config;
  config.scorer = parse_scorer(a.scorer);
  if (a.split == "test") {
    config.split = SplitName::kTest;
  } else if (a.split == "validation") {
    config.split = SplitName::kValidation;
  } else {
    throw UsageError("--split must be test or validation");
  }
  config.ranking_negatives = a.ranking_negatives;
  config.ks = parse_list<std::size_t>(a.ks, "--ks");
  config.seed = c.seed;
  config.validate();
  const fs::path dir = output_dir(c);
  const Trained t = load_trained(a.model);

  json echo = model_echo(a.model);
  echo["command"] = "evaluate";
  echo["eval"] = config.to_json();
  write_json(dir / "evaluate_config.json", echo);

  const MetricsReport report = evaluate(t.view(), t.m.data.graph, t.m.split, config);
  report.validate();
  write_json(dir / "metrics.json", report.to_json());
  if (a.per_source) write_file_atomic(dir / "per_source.csv", per_source_csv(report, t.m.data.graph));
  out << "auc " << report.auc << ", recall " << report.recall;
  for (const auto& [k, v] : report.ap_at_k) out << ", ap@" << k << ' ' << v;
  out << '\n';
  return 0;
}

struct PredictArgs {
  ModelArgs model;
  std::string pairs;
};

int cmd_predict(Command& c, const PredictArgs& a, std::ostream& out) {
  require(a.pairs, "--pairs");
  const fs::path dir = output_dir(c);
  const Trained t = load_trained(a.model);
  const auto& g = t.m.data.graph;

  std::istringstream in(read_file(a.pairs));
  std::ostringstream csv;
  csv.precision(17);
  csv << "source,target,score,masked_score,aspect\n";
  std::string line;
  std::size_t lineno = 0, rows = 0;
  const ModelView view = t.view();
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = strip_cr(line);
    if (is_blank(body) || body.front() == '#') continue;
    const auto fields = split_fields(body, '\t');
    if (fields.size() != 2) throw ParseError(a.pairs, lineno, "expected source<TAB>target");
    const NodeIndex i = g.index_of(std::string(fields[0]));
    const NodeIndex j = g.index_of(std::string(fields[1]));
    const auto s = score_pair(i, j, view, AspectMode::kInfer);
    csv << fields[0] << ',' << fields[1] << ',' << s.score << ',' << s.masked.sum() << ','
        << s.aspect.index << '\n';
    ++rows;
  }
  json echo = model_echo(a.model);
  echo["command"] = "predict";
  echo["pairs"] = artifact(a.pairs);
  write_json(dir / "predict_config.json", echo);
  write_file_atomic(dir / "predictions.csv", csv.str());
  out << "scored " << rows << " pairs\n";
  return 0;
}

struct ExplainArgs {
  ModelArgs model;
  std::string target;
  std::size_t top_n = 5;
  std::size_t top_m = 10;
  std::string format = "json";
};

int cmd_explain(Command& c, const ExplainArgs& a, std::ostream& out) {
  require(a.target, "--target");
  if (a.format != "json" && a.format != "csv") throw UsageError("--format must be json or csv");
  const fs::path dir = output_dir(c);
  const Trained t = load_trained(a.model);
  const NodeIndex target = t.m.data.graph.index_of(a.target);

  ExplainOptions options;
  options.top_n = a.top_n;
  options.top_m = a.top_m;
  options.channels = t.m.data.channels;
  const auto exp = explain_target(target, t.view(), t.m.data.graph, t.m.data.docs, options);

  json echo = model_echo(a.model);
  echo["command"] = "explain";
  echo["explain"] = {{"target", a.target}, {"top_n", a.top_n}, {"top_m", a.top_m},
                     {"format", a.format}, {"channels", options.channels.to_string()}};
  write_json(dir / "explain_config.json", echo);
  const bool as_json = a.format == "json";
  export_explanation(exp, dir / (as_json ? "explanation.json" : "explanation.csv"),
                     as_json ? ExplainFormat::kJson : ExplainFormat::kCsv);
  std::size_t listed = 0;
  for (const auto& group : exp.aspects) listed += group.citers.size();
  out << "explained " << a.target << ": " << listed << " citers listed\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-aspect citation link prediction", "patsteg"};
  app.require_subcommand(1);

  Command ingest{app.add_subcommand("ingest", "load a dataset, split it, write a manifest")};
  IngestArgs ingest_args;
  add_common(ingest);
  ingest.app->add_option("--edges", ingest_args.edges, "source<TAB>target[<TAB>time] file");
  ingest.app->add_option("--text", ingest_args.text, "node<TAB>channel<TAB>tokens file");
  ingest.app->add_option("--vectors", ingest_args.vectors, "word vector file");
  ingest.app->add_option("--channels", ingest_args.channels, "e.g. title, title+abstract")
      ->capture_default_str();
  ingest.app->add_option("--ratios", ingest_args.ratios, "train,validation,test")
      ->capture_default_str();
  ingest.app->add_option("--negatives-per-positive", ingest_args.negatives_per_positive)
      ->capture_default_str();

  Command train{app.add_subcommand("train", "fit the model")};
  TrainArgs train_args;
  add_common(train);
  auto& tc = train_args.config;
  auto* tapp = train.app;
  tapp->add_option("--manifest", train_args.manifest, "manifest.json from ingest");
  tapp->add_option("--variant", train_args.variant, "dp or ndp")->capture_default_str();
  tapp->add_option("--aspects", tc.aspects)->capture_default_str();
  tapp->add_option("--struct-dim", tc.struct_dim)->capture_default_str();
  tapp->add_option("--margin-edge", tc.margin_edge)->capture_default_str();
  tapp->add_option("--margin-aspect", tc.margin_aspect)->capture_default_str();
  tapp->add_option("--aspect-loss-weight", tc.aspect_loss_weight)->capture_default_str();
  tapp->add_option("--learning-rate", tc.learning_rate)->capture_default_str();
  tapp->add_option("--momentum", tc.momentum)->capture_default_str();
  tapp->add_option("--epochs", tc.epochs)->capture_default_str();
  tapp->add_option("--batch-size", tc.batch_size)->capture_default_str();
  tapp->add_option("--alternations", tc.alternations)->capture_default_str();
  tapp->add_option("--negatives-per-positive", tc.negatives_per_positive)->capture_default_str();
  tapp->add_option("--temperature", tc.temperature)->capture_default_str();
  tapp->add_option("--straight-through", tc.straight_through)->capture_default_str();
  tapp->add_option("--snapshots", train_args.snapshots, "ascending cutoffs, comma separated");
  tapp->add_option("--propagation-steps", tc.propagation_steps)->capture_default_str();
  tapp->add_option("--propagation-epsilon", tc.propagation_epsilon)->capture_default_str();
  tapp->add_option("--trace-batch-size", tc.trace_batch_size)->capture_default_str();

  Command evaluate_cmd{app.add_subcommand("evaluate", "score a split and write metrics")};
  EvaluateArgs eval_args;
  add_common(evaluate_cmd);
  add_model_options(evaluate_cmd.app, eval_args.model);
  evaluate_cmd.app->add_option("--scorer", eval_args.scorer, "total or masked")->capture_default_str();
  evaluate_cmd.app->add_option("--split", eval_args.split, "test or validation")->capture_default_str();
  evaluate_cmd.app->add_option("--ranking-negatives", eval_args.ranking_negatives)->capture_default_str();
  evaluate_cmd.app->add_option("--ks", eval_args.ks)->capture_default_str();
  evaluate_cmd.app->add_option("--per-source", eval_args.per_source, "also write per_source.csv")
      ->capture_default_str();

  Command predict{app.add_subcommand("predict", "score pairs from a TSV")};
  PredictArgs predict_args;
  add_common(predict);
  add_model_options(predict.app, predict_args.model);
  predict.app->add_option("--pairs", predict_args.pairs, "source<TAB>target file");

  Command explain{app.add_subcommand("explain", "per-aspect citers of a target")};
  ExplainArgs explain_args;
  add_common(explain);
  add_model_options(explain.app, explain_args.model);
  explain.app->add_option("--target", explain_args.target, "node id");
  explain.app->add_option("--top-n", explain_args.top_n)->capture_default_str();
  explain.app->add_option("--top-m", explain_args.top_m)->capture_default_str();
  explain.app->add_option("--format", explain_args.format, "json or csv")->capture_default_str();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out << app.help(e.get_name() == "--help" ? "" : e.get_name());
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "patsteg: " << e.what() << "\n";
      return static_cast<int>(ErrorKind::kUsage);
    }
    for (Command* c : {&ingest, &train, &evaluate_cmd, &predict, &explain}) {
      if (!c->app->parsed()) continue;
      resolve_sources(*c);
      if (c == &ingest) return cmd_ingest(*c, ingest_args, out);
      if (c == &train) return cmd_train(*c, train_args, out);
      if (c == &evaluate_cmd) return cmd_evaluate(*c, eval_args, out);
      if (c == &predict) return cmd_predict(*c, predict_args, out);
      return cmd_explain(*c, explain_args, out);
    }
    throw UsageError("no subcommand given");
  } catch (const Error& e) {
    err << "patsteg: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "patsteg: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kData);
  }
}

}  // namespace patsteg
