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

#include "ragmt/pipelines.h"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

#include "ragmt/http_backend.h"
#include "ragmt/prompting.h"
#include "ragmt/retrieval.h"
#include "ragmt/segmenter.h"
#include "ragmt/utf8.h"

namespace ragmt {
namespace {

constexpr std::string_view kVariantNames[] = {
    "Baseline", "Dictionary", "RagGenerate", "DictThenRefine",
    "IntegratedRag"};

// Carries the name of the stage that failed out of the stage sequence.
class StageFailure : public std::runtime_error {
 public:
  StageFailure(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class Tracer {
 public:
  Tracer(const PipelineConfig& config, const PipelineContext& ctx,
         TranslationRecord& record)
      : config_(config), ctx_(ctx), record_(record) {}

  // Runs fn(input) as a named stage and records it.
  template <typename Fn>
  std::string Stage(const std::string& name, const std::string& input, Fn fn) {
    std::string output;
    try {
      output = fn(input);
    } catch (const std::exception& e) {
      record_.stages.push_back({name, input, "", std::nullopt});
      throw StageFailure(name, e.what());
    }
    record_.stages.push_back({name, input, output, std::nullopt});
    return output;
  }

  std::string Dictionary(const std::string& input) {
    return Stage("dictionary", input, [&](const std::string& text) {
      if (ctx_.external_dictionary != nullptr) {
        return ctx_.external_dictionary->Translate(text);
      }
      return DictionaryTranslate(*ctx_.lexicon, text);
    });
  }

  // segment -> retrieve -> glossary; returns the glossary block.
  std::string Retrieval(const std::string& source) {
    std::vector<Segment> segments;
    std::vector<RetrievedTerm> terms;
    const std::string joined =
        Stage("segment", source, [&](const std::string& text) {
          segments = SegmentText(*ctx_.lexicon, text);
          return JoinSegments(segments, "/");
        });
    const std::string retrieved =
        Stage("retrieve", joined, [&](const std::string&) {
          terms = Retrieve(*ctx_.lexicon, segments);
          std::string out;
          for (const RetrievedTerm& t : terms) {
            if (!out.empty()) out += '\n';
            out += t.source + (t.matched ? " => " + t.target : " (miss)");
          }
          return out;
        });
    return Stage("glossary", retrieved,
                 [&](const std::string&) { return GlossaryBlock(terms); });
  }

  // render -> send; returns the model output.
  std::string Generate(TemplateId id, const std::string& user_text,
                       std::optional<std::string> glossary) {
    const PromptTemplate& tmpl = GetTemplate(id);
    RenderedPrompt prompt;
    Stage("render", user_text, [&](const std::string& text) {
      prompt = Render(tmpl, text, glossary);
      return prompt.user_text;
    });

    ChatRequest request;
    request.model_id = config_.model_id;
    request.system_text = prompt.system_text;
    request.user_text = prompt.user_text;
    request.temperature = config_.temperature;
    request.max_output_chars = tmpl.output_char_limit;
    const std::string key = CacheKey(request);

    std::string output;
    try {
      output = SendCached(*ctx_.backend, ctx_.cache, request).text;
    } catch (const std::exception& e) {
      record_.stages.push_back({"send", prompt.user_text, "", key});
      throw StageFailure("send", e.what());
    }
    record_.stages.push_back({"send", prompt.user_text, output, key});

    if (tmpl.output_char_limit) {
      const std::size_t length = utf8::Length(output);
      if (length > *tmpl.output_char_limit) {
        record_.diagnostics.push_back(
            "output length " + std::to_string(length) + " exceeds the " +
            std::to_string(*tmpl.output_char_limit) + "-character limit");
      }
    }
    return output;
  }

 private:
  const PipelineConfig& config_;
  const PipelineContext& ctx_;
  TranslationRecord& record_;
};

void CheckContext(const PipelineConfig& config, const PipelineContext& ctx) {
  const bool needs_lexicon =
      config.variant != Variant::kBaseline &&
      !(ctx.external_dictionary != nullptr &&
        (config.variant == Variant::kDictionary ||
         config.variant == Variant::kDictThenRefine));
  if (needs_lexicon && ctx.lexicon == nullptr) {
    throw std::invalid_argument("pipeline '" + config.label +
                                "' requires a lexicon");
  }
  if (UsesLlm(config.variant) && ctx.backend == nullptr) {
    throw std::invalid_argument("pipeline '" + config.label +
                                "' requires a chat backend");
  }
}

}  // namespace

Variant ParseVariant(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kVariantNames); ++i) {
    if (kVariantNames[i] == name) return static_cast<Variant>(i);
  }
  throw std::invalid_argument("unknown pipeline variant '" + std::string(name) +
                              "'");
}

std::string_view VariantName(Variant v) {
  return kVariantNames[static_cast<std::size_t>(v)];
}

bool UsesLlm(Variant v) { return v != Variant::kDictionary; }

std::string PipelineConfig::WorkflowDescription() const {
  if (!workflow.empty()) return workflow;
  switch (variant) {
    case Variant::kBaseline:
      return "Baseline with " + model_id;
    case Variant::kDictionary:
      return "Dictionary-Based Machine Translation";
    case Variant::kRagGenerate:
      return model_id + " with Retrieval-Augmented Generation";
    case Variant::kDictThenRefine:
      return "Dictionary-Based + " + model_id + " Refinement";
    case Variant::kIntegratedRag:
      return "Integrated " + model_id + " + RAG";
  }
  return {};
}

TranslationRecord RunPipeline(const PipelineConfig& config,
                              std::string_view source,
                              const PipelineContext& ctx) {
  CheckContext(config, ctx);
  TranslationRecord record;
  record.source = std::string(source);
  record.config_label = config.label;
  Tracer tracer(config, ctx, record);

  try {
    switch (config.variant) {
      case Variant::kBaseline:
        record.hypothesis = tracer.Generate(TemplateId::kBaselineTranslate,
                                            record.source, std::nullopt);
        break;
      case Variant::kDictionary:
        record.hypothesis = tracer.Dictionary(record.source);
        break;
      case Variant::kRagGenerate:
      case Variant::kIntegratedRag: {
        const std::string glossary = tracer.Retrieval(record.source);
        const TemplateId id = config.variant == Variant::kRagGenerate
                                  ? TemplateId::kRagTranslateA
                                  : TemplateId::kRagTranslateB;
        record.hypothesis = tracer.Generate(id, record.source, glossary);
        break;
      }
      case Variant::kDictThenRefine: {
        const std::string draft = tracer.Dictionary(record.source);
        record.hypothesis =
            tracer.Generate(TemplateId::kRefine, draft, std::nullopt);
        break;
      }
    }
  } catch (const StageFailure& failure) {
    record.hypothesis.clear();
    record.error = StageError{failure.stage(), failure.what()};
    record.diagnostics.push_back("stage '" + failure.stage() +
                                 "' failed: " + failure.what());
  }
  return record;
}

const std::vector<TranslationRecord>& ExperimentResult::Records(
    std::string_view label) const {
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].label == label) return records[i];
  }
  throw std::out_of_range("no pipeline labelled '" + std::string(label) + "'");
}

ExperimentResult RunExperiment(std::span<const PipelineConfig> configs,
                               std::span<const CorpusPair> corpus,
                               const PipelineContext& ctx,
                               std::size_t parallelism) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  std::set<std::string_view> labels;
  for (const PipelineConfig& c : configs) {
    if (!labels.insert(c.label).second) {
      throw std::invalid_argument("duplicate pipeline label '" + c.label + "'");
    }
    CheckContext(c, ctx);
  }

  ExperimentResult result;
  result.configs.assign(configs.begin(), configs.end());
  result.corpus.assign(corpus.begin(), corpus.end());
  result.records.assign(configs.size(),
                        std::vector<TranslationRecord>(corpus.size()));

  const std::size_t tasks = configs.size() * corpus.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::size_t c = t / corpus.size();
      const std::size_t s = t % corpus.size();
      result.records[c][s] = RunPipeline(configs[c], corpus[s].source, ctx);
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(tasks, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  return result;
}

nlohmann::ordered_json ToJson(const TranslationRecord& record) {
  nlohmann::ordered_json j;
  j["config_label"] = record.config_label;
  j["source"] = record.source;
  j["hypothesis"] = record.hypothesis;
  auto stages = nlohmann::ordered_json::array();
  for (const StageTrace& s : record.stages) {
    nlohmann::ordered_json sj;
    sj["stage"] = s.name;
    sj["input"] = s.input;
    sj["output"] = s.output;
    if (s.cache_key) sj["cache_key"] = *s.cache_key;
    stages.push_back(std::move(sj));
  }
  j["stages"] = std::move(stages);
  j["diagnostics"] = record.diagnostics;
  if (record.error) {
    j["error"] = {{"stage", record.error->stage},
                  {"message", record.error->message}};
  } else {
    j["error"] = nullptr;
  }
  return j;
}

}  // namespace ragmt
