// Copyright 2026 The ragmt Authors
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

// ragmt: dictionary, retrieval-augmented and two-stage translation
// pipelines with BLEU comparison.
//
//   ragmt lexicon validate <path>
//   ragmt segment --lexicon <path> [--show-spans]
//   ragmt prompt show <id>
//   ragmt --config <path> translate <label> [--trace <file>]
//   ragmt --config <path> experiment run [--out <dir>]
//   ragmt score --corpus <tsv> --hyp <file> [--mode character|whitespace]
//   ragmt report --manifest <path>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ragmt/commands.h"

namespace {

int RequireConfig(const std::string& config) {
  if (config.empty()) {
    std::cerr << "error: --config <path> is required for this subcommand\n";
    return ragmt::cli::kExitUsage;
  }
  return ragmt::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retrieval-augmented low-resource translation pipelines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ragmt::kToolVersion));

  std::string config_path;
  std::size_t parallelism = 0;
  bool quiet = false;
  app.add_option("--config", config_path, "Experiment config (JSON)");
  app.add_option("--parallelism", parallelism, "Concurrent sentences")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "Suppress warnings and the report table");

  auto* lexicon = app.add_subcommand("lexicon", "Lexicon utilities");
  lexicon->require_subcommand(1);
  auto* validate = lexicon->add_subcommand("validate", "Load and check a lexicon");
  std::string validate_path;
  validate->add_option("path", validate_path, "Lexicon TSV")->required();

  auto* segment = app.add_subcommand("segment", "Segment stdin lines");
  std::string segment_lexicon;
  bool show_spans = false;
  segment->add_option("--lexicon", segment_lexicon, "Lexicon TSV")->required();
  segment->add_flag("--show-spans", show_spans, "Print [start,end) per segment");

  auto* prompt = app.add_subcommand("prompt", "Prompt templates");
  prompt->require_subcommand(1);
  auto* show = prompt->add_subcommand("show", "Print a template's system text");
  std::string prompt_id;
  show->add_option("id", prompt_id,
                   "baseline_translate | rag_translate_a | rag_translate_b | refine")
      ->required();

  auto* translate = app.add_subcommand("translate", "Translate stdin lines");
  std::string label;
  std::string trace_path;
  translate->add_option("label", label, "Pipeline label from the config")
      ->required();
  translate->add_option("--trace", trace_path, "Write JSON stage traces here");

  auto* experiment = app.add_subcommand("experiment", "Experiments");
  experiment->require_subcommand(1);
  auto* run = experiment->add_subcommand("run", "Run every configured pipeline");
  std::string out_dir = "results";
  run->add_option("--out", out_dir, "Output directory")
      ->capture_default_str();

  auto* score = app.add_subcommand("score", "Corpus BLEU of a hypothesis file");
  std::string corpus_path;
  std::string hyp_path;
  std::string mode = "character";
  int max_order = 4;
  bool score_json = false;
  score->add_option("--corpus", corpus_path, "source<TAB>reference TSV")->required();
  score->add_option("--hyp", hyp_path, "Hypotheses, one per line")->required();
  score->add_option("--mode", mode, "character | whitespace")
      ->capture_default_str()
      ->check(CLI::IsMember({"character", "whitespace"}));
  score->add_option("--max-order", max_order, "Maximum n-gram order")
      ->capture_default_str()
      ->check(CLI::Range(1, 9));
  score->add_flag("--json", score_json, "Machine-readable output");

  auto* report = app.add_subcommand("report", "Render a manifest's score table");
  std::string manifest_path;
  bool report_json = false;
  report->add_option("--manifest", manifest_path, "manifest.json")->required();
  report->add_flag("--json", report_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ragmt::cli::kExitUsage;
  }

  spdlog::set_default_logger(spdlog::stderr_color_st("ragmt"));
  spdlog::set_pattern("%l: %v");
  spdlog::set_level(quiet ? spdlog::level::err : spdlog::level::warn);

  ragmt::cli::Streams io{std::cin, std::cout, std::cerr};
  std::optional<std::size_t> parallelism_override;
  if (parallelism > 0) parallelism_override = parallelism;

  if (validate->parsed()) return ragmt::cli::LexiconValidate(validate_path, io);
  if (segment->parsed()) {
    return ragmt::cli::SegmentLines(segment_lexicon, show_spans, io);
  }
  if (show->parsed()) return ragmt::cli::PromptShow(prompt_id, io);
  if (translate->parsed()) {
    if (int rc = RequireConfig(config_path)) return rc;
    ragmt::cli::TranslateOptions options{config_path, label, std::nullopt,
                                         parallelism_override};
    if (!trace_path.empty()) options.trace_path = trace_path;
    return ragmt::cli::Translate(options, io);
  }
  if (run->parsed()) {
    if (int rc = RequireConfig(config_path)) return rc;
    ragmt::ExperimentRunOptions options;
    options.out_dir = out_dir;
    options.parallelism = parallelism_override;
    return ragmt::cli::ExperimentRun(config_path, options, quiet, io);
  }
  if (score->parsed()) {
    ragmt::cli::ScoreOptions options;
    options.corpus_path = corpus_path;
    options.hyp_path = hyp_path;
    options.eval.max_order = max_order;
    options.eval.tokenization = ragmt::ParseTokenization(mode);
    options.json = score_json;
    return ragmt::cli::Score(options, io);
  }
  if (report->parsed()) {
    return ragmt::cli::Report(manifest_path, report_json, io);
  }
  return ragmt::cli::kExitUsage;
}
