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

// Translation pipelines and the experiment runner.
//
//   Baseline        render(baseline_translate) -> send
//   Dictionary      dictionary
//   RagGenerate     segment -> retrieve -> glossary -> render(rag_translate_a) -> send
//   IntegratedRag   segment -> retrieve -> glossary -> render(rag_translate_b) -> send
//   DictThenRefine  dictionary -> render(refine) -> send
//
// Every stage is traced. LLM stages go through the response cache and record
// their cache key.

#ifndef RAGMT_PIPELINES_H_
#define RAGMT_PIPELINES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ragmt/lexicon.h"
#include "ragmt/llm_client.h"
#include "ragmt/response_cache.h"

namespace ragmt {

class ExternalDictionaryClient;

enum class Variant {
  kBaseline,
  kDictionary,
  kRagGenerate,
  kDictThenRefine,
  kIntegratedRag,
};

// Names as used in config files: Baseline, Dictionary, RagGenerate,
// DictThenRefine, IntegratedRag. Throws std::invalid_argument.
Variant ParseVariant(std::string_view name);
std::string_view VariantName(Variant v);
bool UsesLlm(Variant v);

struct PipelineConfig {
  std::string label;
  Variant variant = Variant::kDictionary;
  std::string model_id;  // unused by Dictionary
  std::string workflow;  // report text; derived from variant when empty
  double temperature = 0.0;

  // e.g. "Dictionary-Based + Gemini 2.0 Refinement"
  std::string WorkflowDescription() const;
};

struct StageTrace {
  std::string name;
  std::string input;
  std::string output;
  std::optional<std::string> cache_key;
};

struct StageError {
  std::string stage;
  std::string message;
};

struct TranslationRecord {
  std::string source;
  std::string hypothesis;
  std::string config_label;
  std::vector<StageTrace> stages;
  std::vector<std::string> diagnostics;
  std::optional<StageError> error;  // hypothesis is empty when set
};

struct PipelineContext {
  const Lexicon* lexicon = nullptr;
  ChatBackend* backend = nullptr;
  ResponseCache* cache = nullptr;
  // When set, dictionary stages call the remote endpoint instead of the
  // local lexicon.
  ExternalDictionaryClient* external_dictionary = nullptr;
};

// Throws std::invalid_argument when ctx lacks a component the variant
// needs. Stage failures are captured in the record instead of thrown.
TranslationRecord RunPipeline(const PipelineConfig& config,
                              std::string_view source,
                              const PipelineContext& ctx);

struct CorpusPair {
  std::string source;
  std::string reference;
};

struct ExperimentResult {
  std::vector<PipelineConfig> configs;
  std::vector<std::vector<TranslationRecord>> records;  // [config][sentence]
  std::vector<CorpusPair> corpus;

  const std::vector<TranslationRecord>& Records(std::string_view label) const;
};

// Runs every config over every sentence using up to `parallelism` worker
// threads. Results are index-assembled, so the output does not depend on
// scheduling. Throws std::invalid_argument for an empty corpus, duplicate
// labels or a context missing required components, before any work starts.
ExperimentResult RunExperiment(std::span<const PipelineConfig> configs,
                               std::span<const CorpusPair> corpus,
                               const PipelineContext& ctx,
                               std::size_t parallelism = 4);

nlohmann::ordered_json ToJson(const TranslationRecord& record);

}  // namespace ragmt

#endif  // RAGMT_PIPELINES_H_
