// Copyright 2026 The cyclip Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cyclip/csv.h"
#include "cyclip/datagen.h"
#include "cyclip/error.h"
#include "cyclip/evaluation.h"
#include "cyclip/io.h"
#include "cyclip/run_config.h"
#include "cyclip/training.h"

namespace cyclip::cli {
namespace {

constexpr std::array<std::size_t, 3> kZeroShotKs = {1, 3, 5};
constexpr std::size_t kDefaultConsistencyKs[] = {1, 3, 5, 10};

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string data;
  std::string checkpoint = "checkpoint.cyck";
  std::string log;
  std::string split = "test";
  std::vector<std::size_t> ks;
  std::vector<std::string> checkpoints;
};

// --seed drives every stream of a run: data, init/shuffle and the probe.
RunConfig LoadConfig(const Options& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : LoadRunConfig(o.config);
  if (o.seed) {
    cfg.data.seed = *o.seed;
    cfg.train.seed = *o.seed;
    cfg.probe.seed = *o.seed;
  }
  return cfg;
}

SyntheticDataset LoadData(const Options& o, const RunConfig& cfg) {
  return o.data.empty() ? SampleDataset(cfg.data) : ReadDataset(o.data);
}

std::string OutPath(const Options& o, const char* fallback) {
  return o.out.empty() ? fallback : o.out;
}

void Emit(std::ostream& out, const CsvTable& table, const std::string& path) {
  table.Write(path);
  out << table.ToString();
}

void GenData(const Options& o, std::ostream& out) {
  const RunConfig cfg = LoadConfig(o);
  const SyntheticDataset ds = SampleDataset(cfg.data);
  const std::string path = OutPath(o, "dataset.cyds");
  WriteDataset(path, ds);
  out << "wrote " << path << ": " << ds.hierarchy.num_subclasses() << " classes, "
      << ds.train.size() << " train / " << ds.test.size() << " test pairs\n";
}

void TrainCommand(const Options& o, std::ostream& out) {
  const RunConfig cfg = LoadConfig(o);
  const SyntheticDataset ds = LoadData(o, cfg);
  TrainResult result = Train(ds, cfg.train);

  const std::string path = OutPath(o, "checkpoint.cyck");
  WriteCheckpoint(path, {std::string(VariantName(cfg.train.variant)),
                         cfg.train.weights.lambda1, cfg.train.weights.lambda2, result.model});

  CsvTable log({"step", "epoch", "lr", "clip_loss", "in_modal_loss", "cross_modal_loss",
                "total", "logit_scale"});
  for (const auto& e : result.log) {
    log.AddRow({std::to_string(e.step), std::to_string(e.epoch), FormatDouble(e.lr),
                FormatDouble(e.clip_loss), FormatDouble(e.in_modal_loss),
                FormatDouble(e.cross_modal_loss), FormatDouble(e.total),
                FormatDouble(e.logit_scale)});
  }
  const std::string log_path = o.log.empty() ? path + ".log.csv" : o.log;
  log.Write(log_path);
  out << "wrote " << path << " and " << log_path << " (" << result.log.size() << " steps";
  if (!result.log.empty()) {
    out << ", loss " << FormatDouble(result.log.front().total) << " -> "
        << FormatDouble(result.log.back().total);
  }
  out << ")\n";
}

EvaluationContext LoadContext(const Options& o, const RunConfig& cfg,
                              const std::string& checkpoint) {
  const SyntheticDataset ds = LoadData(o, cfg);
  const Checkpoint ckpt = ReadCheckpoint(checkpoint);
  return PrepareEvaluation(ckpt.model, ds);
}

void EvalZeroShot(const Options& o, std::ostream& out) {
  const RunConfig cfg = LoadConfig(o);
  const EvaluationContext ctx = LoadContext(o, cfg, o.checkpoint);
  // k values above the class count are skipped.
  std::vector<std::size_t> ks;
  for (std::size_t k : kZeroShotKs) {
    if (k <= ctx.classes.count()) ks.push_back(k);
  }
  const auto acc = ZeroShotTopK(ctx, ks);
  CsvTable table({"k", "accuracy"});
  for (std::size_t i = 0; i < ks.size(); ++i) {
    table.AddRow({std::to_string(ks[i]), FormatDouble(acc[i])});
  }
  Emit(out, table, OutPath(o, "zeroshot.csv"));
}

void EvalConsistency(const Options& o, std::ostream& out) {
  const RunConfig cfg = LoadConfig(o);
  const EvaluationContext ctx = LoadContext(o, cfg, o.checkpoint);
  const std::vector<std::size_t> ks =
      o.ks.empty() ? std::vector<std::size_t>(std::begin(kDefaultConsistencyKs),
                                              std::end(kDefaultConsistencyKs))
                   : o.ks;
  const auto scores = ConsistencyAtK(ctx, ks);
  CsvTable table({"k", "score"});
  for (std::size_t i = 0; i < ks.size(); ++i) {
    table.AddRow({std::to_string(ks[i]), FormatDouble(scores[i])});
  }
  Emit(out, table, OutPath(o, "consistency.csv"));
}

void EvalGeometry(const Options& o, std::ostream& out) {
  const RunConfig cfg = LoadConfig(o);
  const EvaluationContext ctx = LoadContext(o, cfg, o.checkpoint);
  const GeometryReport g = Geometry(ctx, cfg.train.batch_size);
  CsvTable table({"alignment", "uniformity", "cross_modal_gap"});
  table.AddRow({FormatDouble(g.alignment), FormatDouble(g.uniformity),
                FormatDouble(g.cross_modal_gap)});
  Emit(out, table, OutPath(o, "geometry.csv"));
}

void EvalGrained(const Options& o, std::ostream& out) {
  const RunConfig cfg = LoadConfig(o);
  const EvaluationContext ctx = LoadContext(o, cfg, o.checkpoint);
  const GrainedReport g = Grained(ctx);
  CsvTable table({"fine_grained", "coarse_grained"});
  table.AddRow({FormatDouble(g.fine), FormatDouble(g.coarse)});
  Emit(out, table, OutPath(o, "grained.csv"));
}

void LinearProbeCommand(const Options& o, std::ostream& out) {
  const RunConfig cfg = LoadConfig(o);
  const EvaluationContext ctx = LoadContext(o, cfg, o.checkpoint);
  CsvTable table({"accuracy"});
  table.AddRow({FormatDouble(ProbeAccuracy(ctx, cfg.probe))});
  Emit(out, table, OutPath(o, "linear_probe.csv"));
}

std::vector<std::int64_t> ToLabels(const std::vector<std::size_t>& v) {
  return {v.begin(), v.end()};
}

void ExportEmbeddings(const Options& o, std::ostream& out) {
  const RunConfig cfg = LoadConfig(o);
  const EvaluationContext ctx = LoadContext(o, cfg, o.checkpoint);
  if (o.split != "train" && o.split != "test") {
    throw Error(ErrorCode::kBadConfig, "--split must be train or test");
  }
  const EncodedSplit& split = o.split == "train" ? ctx.train : ctx.test;
  const std::string prefix = OutPath(o, "embeddings");
  std::vector<std::int64_t> class_ids(ctx.classes.count());
  for (std::size_t c = 0; c < class_ids.size(); ++c) class_ids[c] = static_cast<std::int64_t>(c);
  WriteEmbeddings(prefix + "_image.cyem", split.images, ToLabels(split.subclasses));
  WriteEmbeddings(prefix + "_text.cyem", split.texts, ToLabels(split.subclasses));
  WriteEmbeddings(prefix + "_classes.cyem", ctx.classes, class_ids);
  out << "wrote " << prefix << "_{image,text,classes}.cyem (" << split.images.count()
      << " pairs, " << class_ids.size() << " classes)\n";
}

void Report(const Options& o, std::ostream& out) {
  if (o.checkpoints.empty()) {
    throw CLI::ValidationError("--checkpoints", "at least one checkpoint is required");
  }
  const RunConfig cfg = LoadConfig(o);
  const SyntheticDataset ds = LoadData(o, cfg);
  constexpr std::size_t kTop1[] = {1};
  CsvTable table({"variant", "zs_top1", "consistency_k1", "alignment", "uniformity"});
  for (const auto& path : o.checkpoints) {
    const Checkpoint ckpt = ReadCheckpoint(path);
    const EvaluationContext ctx = PrepareEvaluation(ckpt.model, ds);
    const GeometryReport g = Geometry(ctx, cfg.train.batch_size);
    table.AddRow({ckpt.variant, FormatDouble(ZeroShotTopK(ctx, kTop1)[0]),
                  FormatDouble(ConsistencyAtK(ctx, kTop1)[0]), FormatDouble(g.alignment),
                  FormatDouble(g.uniformity)});
  }
  Emit(out, table, OutPath(o, "report.csv"));
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-consistent contrastive training and diagnostics on synthetic data",
               "cyclip"};
  app.require_subcommand(1);
  Options o;
  std::function<void(const Options&, std::ostream&)> action;

  auto add = [&](const char* name, const char* help, auto handler, bool needs_model) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "Run config file (key = value)");
    sub->add_option("--seed", o.seed, "Override data, training and probe seeds");
    sub->add_option("--out", o.out, "Output path");
    if (std::string_view(name) != "gen-data") {
      sub->add_option("--data", o.data, "Dataset file; regenerated from config if absent");
    }
    if (needs_model) {
      sub->add_option("--checkpoint", o.checkpoint, "Checkpoint to evaluate")
          ->capture_default_str();
    }
    sub->callback([&action, handler] { action = handler; });
    return sub;
  };

  add("gen-data", "Generate and save the synthetic dataset", GenData, false);
  add("train", "Train a model and write a checkpoint plus a per-step log CSV", TrainCommand,
      false)
      ->add_option("--log", o.log, "Training log CSV (default: <out>.log.csv)");
  add("eval-zeroshot", "Zero-shot top-k accuracy, CSV columns k,accuracy", EvalZeroShot, true);
  add("eval-consistency", "Consistency score, CSV columns k,score", EvalConsistency, true)
      ->add_option("--k", o.ks, "Neighbor counts (default 1 3 5 10)");
  add("eval-geometry", "CSV columns alignment,uniformity,cross_modal_gap", EvalGeometry, true);
  add("eval-grained", "CSV columns fine_grained,coarse_grained", EvalGrained, true);
  add("linear-probe", "Linear-probe test accuracy, CSV column accuracy", LinearProbeCommand,
      true);
  add("export-embeddings", "Write <out>_{image,text,classes}.cyem embedding files",
      ExportEmbeddings, true)
      ->add_option("--split", o.split, "train or test")
      ->capture_default_str();
  add("report",
      "One row per checkpoint: variant,zs_top1,consistency_k1,alignment,uniformity", Report,
      false)
      ->add_option("--checkpoints", o.checkpoints, "Checkpoints to compare")
      ->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    action(o, out);
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool usage = e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kBadConfig;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cyclip::cli
