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

// Declarative experiment configuration and the end-to-end experiment run.
//
// Config document:
//
//   {
//     "lexicon_path": "lexicon.tsv",
//     "corpus_path": "corpus.tsv",
//     "cache_dir": "cache",
//     "backend": {"kind": "mock", "rules": {"...": "..."}},
//     "parallelism": 4,
//     "pipelines": [{"label": "Model 0", "variant": "Baseline",
//                    "model_id": "Gemini 2.0"}, ...],
//     "eval": {"max_order": 4, "tokenization": "character"},
//     "dictionary_mt": {"kind": "http", "base_url": "...", "path": "..."}
//   }
//
// Backend kinds: "mock" (optional "rules"), "replay", and "http" (base_url,
// path, auth_header, auth_prefix, timeout_s, max_attempts,
// backoff_base_ms). Relative paths resolve against the config file's
// directory; RAGMT_CACHE_DIR overrides cache_dir.

#ifndef RAGMT_EXPERIMENT_H_
#define RAGMT_EXPERIMENT_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ragmt/bleu.h"
#include "ragmt/http_backend.h"
#include "ragmt/pipelines.h"
#include "ragmt/timeutil.h"

namespace ragmt {

inline constexpr std::string_view kToolName = "ragmt";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Schema violations and malformed inputs (exit status 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A referenced input file does not exist (exit status 2).
class MissingInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BackendSpec {
  std::string kind = "mock";  // mock | replay | http
  std::map<std::string, std::string> rules;
  HttpEndpoint endpoint;
  RetryPolicy retry;
};

struct ExperimentConfig {
  std::filesystem::path config_path;
  std::filesystem::path lexicon_path;
  std::filesystem::path corpus_path;
  std::filesystem::path cache_dir;
  BackendSpec backend;
  std::size_t parallelism = 4;
  std::vector<PipelineConfig> pipelines;
  EvalConfig eval;
  std::optional<HttpEndpoint> dictionary_mt;

  const PipelineConfig* FindPipeline(std::string_view label) const;
};

// Throws ConfigError. Secrets come from RAGMT_API_KEY / RAGMT_DICT_TOKEN.
ExperimentConfig ParseExperimentConfig(const nlohmann::json& doc,
                                       const std::filesystem::path& config_path);

// Throws MissingInputError if the file is absent, ConfigError otherwise.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// Resolved config without secrets or runtime-only knobs (parallelism).
nlohmann::ordered_json ConfigSnapshot(const ExperimentConfig& config);

// source<TAB>reference per line; empty lines skipped. Throws ConfigError
// naming the line.
std::vector<CorpusPair> LoadCorpus(std::istream& is);
std::vector<CorpusPair> LoadCorpusFile(const std::filesystem::path& path);

std::unique_ptr<ChatBackend> MakeBackend(const BackendSpec& spec,
                                         const ResponseCache& cache,
                                         std::size_t parallelism);

// Hypothesis/trace file stem for a label: non-alphanumerics become '_'.
std::string LabelFileStem(std::string_view label);

struct ExperimentRunOptions {
  std::filesystem::path out_dir = "results";
  std::optional<std::size_t> parallelism;
  Clock clock = DefaultClock();
};

struct ExperimentRunOutcome {
  int exit_code = 0;
  nlohmann::ordered_json manifest;
  std::string report;
  std::size_t backend_invocations = 0;
};

// Loads inputs, runs every pipeline, writes
//
//   <out>/hypotheses/<stem>.txt   one hypothesis per line
//   <out>/traces/<stem>.jsonl     one stage trace per sentence
//   <out>/report.txt              comparison table
//   <out>/report.json             full evaluation report
//   <out>/manifest.json
//
// Throws ConfigError / MissingInputError before the run starts. Once
// started, the manifest is always written; failures set its "error" field
// and a nonzero exit code.
ExperimentRunOutcome RunExperimentFromConfig(
    const std::filesystem::path& config_path,
    const ExperimentRunOptions& options);

// One line per hypothesis; embedded line breaks become spaces.
void WriteLines(const std::filesystem::path& path,
                const std::vector<std::string>& lines);
std::vector<std::string> ReadLines(const std::filesystem::path& path);

}  // namespace ragmt

#endif  // RAGMT_EXPERIMENT_H_
