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

#include "ragmt/commands.h"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <memory>

#include "ragmt/lexicon.h"
#include "ragmt/prompting.h"
#include "ragmt/report.h"
#include "ragmt/segmenter.h"

namespace ragmt::cli {
namespace fs = std::filesystem;

namespace {

std::vector<std::string> ReadAllLines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

// Loads a lexicon, mapping failures to exit codes. Returns nullopt after
// reporting on io.err.
std::optional<LexiconLoadResult> LoadLexiconOrReport(const fs::path& path,
                                                     Streams io, int* code) {
  try {
    return LoadLexiconFile(path);
  } catch (const fs::filesystem_error&) {
    io.err << "error: lexicon file not found: " << path.string() << "\n";
    *code = kExitMissingInput;
  } catch (const LexiconError& e) {
    io.err << "error: " << path.string() << ": " << e.what() << "\n";
    *code = kExitUsage;
  }
  return std::nullopt;
}

}  // namespace

int LexiconValidate(const fs::path& path, Streams io) {
  int code = kExitOk;
  auto loaded = LoadLexiconOrReport(path, io, &code);
  if (!loaded) return code;
  for (const std::string& w : loaded->warnings) io.err << "warning: " << w << "\n";
  io.out << loaded->lexicon.size() << " entries\n";
  return kExitOk;
}

int SegmentLines(const fs::path& lexicon_path, bool show_spans, Streams io) {
  int code = kExitOk;
  auto loaded = LoadLexiconOrReport(lexicon_path, io, &code);
  if (!loaded) return code;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(io.in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<Segment> segments;
    try {
      segments = SegmentText(loaded->lexicon, line);
    } catch (const utf8::DecodeError& e) {
      io.err << "error: input line " << line_no << ": " << e.what() << "\n";
      return kExitUsage;
    }
    if (!show_spans) {
      io.out << JoinSegments(segments, "/") << "\n";
      continue;
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (i > 0) io.out << '/';
      io.out << segments[i].text << '[' << segments[i].start << ','
             << segments[i].end << ')';
    }
    io.out << "\n";
  }
  return kExitOk;
}

int PromptShow(const std::string& id, Streams io) {
  try {
    io.out << GetTemplate(id).system_text << "\n";
    return kExitOk;
  } catch (const PromptError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int Translate(const TranslateOptions& options, Streams io) {
  ExperimentConfig config;
  try {
    config = LoadExperimentConfig(options.config_path);
  } catch (const MissingInputError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const ConfigError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const PipelineConfig* pipeline = config.FindPipeline(options.label);
  if (pipeline == nullptr) {
    io.err << "error: no pipeline labelled '" << options.label << "' in "
           << options.config_path.string() << "\n";
    return kExitUsage;
  }

  int code = kExitOk;
  auto lexicon = LoadLexiconOrReport(config.lexicon_path, io, &code);
  if (!lexicon) return code;

  const std::vector<std::string> lines = ReadAllLines(io.in);
  if (lines.empty()) return kExitOk;

  ResponseCache cache(config.cache_dir);
  const std::size_t parallelism = options.parallelism.value_or(config.parallelism);
  auto backend = MakeBackend(config.backend, cache, parallelism);
  std::unique_ptr<ExternalDictionaryClient> external;
  if (config.dictionary_mt) {
    external = std::make_unique<ExternalDictionaryClient>(
        *config.dictionary_mt, config.backend.retry, &cache);
  }
  const PipelineContext ctx{&lexicon->lexicon, backend.get(), &cache,
                            external.get()};

  std::vector<CorpusPair> corpus;
  for (const std::string& l : lines) corpus.push_back({l, ""});
  const PipelineConfig configs[] = {*pipeline};
  const ExperimentResult result = RunExperiment(configs, corpus, ctx, parallelism);

  std::unique_ptr<std::ofstream> trace;
  if (options.trace_path) {
    trace = std::make_unique<std::ofstream>(*options.trace_path,
                                            std::ios::binary | std::ios::trunc);
    if (!*trace) {
      io.err << "error: cannot write trace file "
             << options.trace_path->string() << "\n";
      return kExitUsage;
    }
  }

  bool failed = false;
  for (const TranslationRecord& r : result.records[0]) {
    if (r.error) {
      failed = true;
      io.out << kErrorMarker << "\n";
      io.err << "error: " << r.error->stage << ": " << r.error->message << "\n";
    } else {
      std::string flat = r.hypothesis;
      for (char& c : flat) {
        if (c == '\n' || c == '\r') c = ' ';
      }
      io.out << flat << "\n";
    }
    if (trace) *trace << ToJson(r).dump() << "\n";
  }
  return failed ? kExitPartialFailure : kExitOk;
}

int ExperimentRun(const fs::path& config_path, const ExperimentRunOptions& options,
                  bool quiet, Streams io) {
  try {
    const ExperimentRunOutcome outcome =
        RunExperimentFromConfig(config_path, options);
    if (outcome.exit_code != kExitOk) {
      io.err << "error: "
             << outcome.manifest.value("error", std::string("run failed"))
             << "\n";
      return outcome.exit_code;
    }
    if (!quiet) io.out << outcome.report;
    const auto& failures = outcome.manifest["failures"];
    if (!failures.empty()) {
      io.err << "warning: " << failures.size()
             << " sentence(s) failed; see manifest.json\n";
    }
    return kExitOk;
  } catch (const MissingInputError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const ConfigError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int Score(const ScoreOptions& options, Streams io) {
  try {
    options.eval.Validate();
    const std::vector<CorpusPair> corpus = LoadCorpusFile(options.corpus_path);
    const std::vector<std::string> hypotheses = ReadLines(options.hyp_path);
    if (corpus.empty()) {
      io.err << "error: corpus is empty\n";
      return kExitUsage;
    }
    if (hypotheses.size() != corpus.size()) {
      io.err << fmt::format("error: {} hypotheses for {} corpus lines\n",
                            hypotheses.size(), corpus.size());
      return kExitUsage;
    }
    std::vector<std::string> references;
    for (const CorpusPair& p : corpus) references.push_back(p.reference);

    EvaluationReport report;
    report.config = options.eval;
    report.systems.push_back(EvaluateSystem(options.hyp_path.stem().string(), "",
                                            hypotheses, references,
                                            options.eval));
    if (options.json) {
      io.out << ToJson(report).dump(2) << "\n";
      return kExitOk;
    }
    const BleuScore& s = report.systems[0].corpus;
    io.out << fmt::format("BLEU = {:.4f}, BP = {:.4f}, ratio = {}/{}, p =",
                          s.bleu, s.brevity_penalty, s.candidate_length,
                          s.reference_length);
    for (const NgramCounts& c : s.counts) {
      io.out << ' ' << c.clipped << '/' << c.total;
    }
    io.out << "\n";
    return kExitOk;
  } catch (const MissingInputError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int Report(const fs::path& manifest_path, bool json, Streams io) {
  std::ifstream is(manifest_path, std::ios::binary);
  if (!is) {
    io.err << "error: manifest not found: " << manifest_path.string() << "\n";
    return kExitMissingInput;
  }
  try {
    const auto manifest = nlohmann::json::parse(is);
    std::vector<ReportRow> rows;
    for (const auto& s : manifest.at("scores")) {
      rows.push_back({s.at("label").get<std::string>(),
                      s.at("workflow").get<std::string>(),
                      s.at("bleu").get<double>()});
    }
    if (json) {
      auto out = nlohmann::ordered_json::array();
      for (const ReportRow& r : rows) {
        out.push_back({{"label", r.label}, {"workflow", r.workflow},
                       {"bleu", r.bleu}});
      }
      io.out << out.dump(2) << "\n";
    } else {
      io.out << RenderReport(rows);
    }
    return kExitOk;
  } catch (const nlohmann::json::exception& e) {
    io.err << "error: malformed manifest: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ragmt::cli
