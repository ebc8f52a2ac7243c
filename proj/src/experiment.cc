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

#include "ragmt/experiment.h"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <set>

#include "ragmt/lexicon.h"
#include "ragmt/prompting.h"
#include "ragmt/report.h"
#include "ragmt/utf8.h"

namespace ragmt {
namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string EnvOr(const char* name, std::string fallback = {}) {
  const char* v = std::getenv(name);
  return v != nullptr ? std::string(v) : fallback;
}

// Typed field access with schema errors that name the field.
template <typename T>
T Required(const json& obj, const std::string& field, const std::string& where) {
  if (!obj.contains(field)) {
    throw ConfigError(fmt::format("{}: missing required field '{}'", where, field));
  }
  try {
    return obj.at(field).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("{}: field '{}' has the wrong type", where, field));
  }
}

template <typename T>
T Optional(const json& obj, const std::string& field, T fallback,
           const std::string& where) {
  if (!obj.contains(field) || obj.at(field).is_null()) return fallback;
  return Required<T>(obj, field, where);
}

fs::path Resolve(const fs::path& base_dir, const fs::path& p) {
  return (p.is_absolute() ? p : base_dir / p).lexically_normal();
}

HttpEndpoint ParseEndpoint(const json& obj, const std::string& where,
                           const std::string& default_path) {
  HttpEndpoint e;
  e.base_url = Required<std::string>(obj, "base_url", where);
  e.path = Optional<std::string>(obj, "path", default_path, where);
  e.auth_header = Optional<std::string>(obj, "auth_header", e.auth_header, where);
  e.auth_prefix = Optional<std::string>(obj, "auth_prefix", e.auth_prefix, where);
  const int timeout = Optional<int>(obj, "timeout_s", 60, where);
  if (timeout <= 0) throw ConfigError(where + ": timeout_s must be positive");
  e.timeout = std::chrono::seconds(timeout);
  return e;
}

ordered_json EndpointSnapshot(const HttpEndpoint& e) {
  ordered_json j;
  j["base_url"] = e.base_url;
  j["path"] = e.path;
  j["auth_header"] = e.auth_header;
  j["timeout_s"] = e.timeout.count();
  return j;
}

BackendSpec ParseBackend(const json& obj) {
  const std::string where = "backend";
  if (!obj.is_object()) throw ConfigError("backend must be an object");
  BackendSpec spec;
  spec.kind = Required<std::string>(obj, "kind", where);
  if (spec.kind == "mock") {
    spec.rules = Optional<std::map<std::string, std::string>>(obj, "rules", {},
                                                             where);
  } else if (spec.kind == "http") {
    spec.endpoint = ParseEndpoint(obj, where, "/v1/chat/completions");
    spec.endpoint.token = EnvOr("RAGMT_API_KEY");
    spec.retry.max_attempts = Optional<int>(obj, "max_attempts", 5, where);
    spec.retry.base_delay =
        std::chrono::milliseconds(Optional<int>(obj, "backoff_base_ms", 1000, where));
    if (spec.retry.max_attempts < 1) {
      throw ConfigError("backend: max_attempts must be >= 1");
    }
  } else if (spec.kind != "replay") {
    throw ConfigError("backend: unknown kind '" + spec.kind +
                      "' (expected http, mock or replay)");
  }
  return spec;
}

PipelineConfig ParsePipeline(const json& obj, std::size_t index) {
  const std::string where = fmt::format("pipelines[{}]", index);
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  PipelineConfig p;
  p.label = Required<std::string>(obj, "label", where);
  if (p.label.empty()) throw ConfigError(where + ": empty label");
  try {
    p.variant = ParseVariant(Required<std::string>(obj, "variant", where));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  p.model_id = Optional<std::string>(obj, "model_id", "", where);
  if (UsesLlm(p.variant) && p.model_id.empty()) {
    throw ConfigError(where + ": variant " + std::string(VariantName(p.variant)) +
                      " requires model_id");
  }
  p.workflow = Optional<std::string>(obj, "workflow", "", where);
  p.temperature = Optional<double>(obj, "temperature", 0.0, where);
  if (!(p.temperature >= 0.0 && p.temperature <= 2.0)) {
    throw ConfigError(where + ": temperature must be in [0, 2]");
  }
  return p;
}

ordered_json PipelineSnapshot(const PipelineConfig& p) {
  ordered_json j;
  j["label"] = p.label;
  j["variant"] = VariantName(p.variant);
  j["model_id"] = p.model_id;
  j["workflow"] = p.WorkflowDescription();
  j["temperature"] = p.temperature;
  return j;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << text;
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

const PipelineConfig* ExperimentConfig::FindPipeline(std::string_view label) const {
  for (const PipelineConfig& p : pipelines) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

ExperimentConfig ParseExperimentConfig(const json& doc,
                                       const fs::path& config_path) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const std::string where = "config";
  const fs::path base = config_path.parent_path();

  ExperimentConfig config;
  config.config_path = config_path;
  config.lexicon_path =
      Resolve(base, Required<std::string>(doc, "lexicon_path", where));
  config.corpus_path =
      Resolve(base, Required<std::string>(doc, "corpus_path", where));
  const std::string cache_override = EnvOr("RAGMT_CACHE_DIR");
  config.cache_dir = cache_override.empty()
                         ? Resolve(base, Required<std::string>(doc, "cache_dir", where))
                         : fs::path(cache_override).lexically_normal();
  if (!doc.contains("backend")) {
    throw ConfigError("config: missing required field 'backend'");
  }
  config.backend = ParseBackend(doc.at("backend"));

  const int parallelism = Optional<int>(doc, "parallelism", 4, where);
  if (parallelism < 1) throw ConfigError("config: parallelism must be >= 1");
  config.parallelism = static_cast<std::size_t>(parallelism);

  if (!doc.contains("pipelines") || !doc.at("pipelines").is_array() ||
      doc.at("pipelines").empty()) {
    throw ConfigError("config: 'pipelines' must be a non-empty array");
  }
  std::set<std::string> labels;
  std::set<std::string> stems;
  for (std::size_t i = 0; i < doc.at("pipelines").size(); ++i) {
    PipelineConfig p = ParsePipeline(doc.at("pipelines")[i], i);
    if (!labels.insert(p.label).second) {
      throw ConfigError("config: duplicate pipeline label '" + p.label + "'");
    }
    if (!stems.insert(LabelFileStem(p.label)).second) {
      throw ConfigError("config: pipeline label '" + p.label +
                        "' collides with another label's file name");
    }
    config.pipelines.push_back(std::move(p));
  }

  if (doc.contains("eval")) {
    const json& e = doc.at("eval");
    config.eval.max_order = Optional<int>(e, "max_order", 4, "eval");
    try {
      config.eval.tokenization = ParseTokenization(
          Optional<std::string>(e, "tokenization", "character", "eval"));
      config.eval.Validate();
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(std::string("eval: ") + ex.what());
    }
    config.eval.sentence_smoothing =
        Optional<bool>(e, "sentence_smoothing", true, "eval");
  }

  if (doc.contains("dictionary_mt") && !doc.at("dictionary_mt").is_null()) {
    const json& d = doc.at("dictionary_mt");
    const std::string kind = Required<std::string>(d, "kind", "dictionary_mt");
    if (kind == "http") {
      HttpEndpoint e = ParseEndpoint(d, "dictionary_mt", "/translate");
      e.token = EnvOr("RAGMT_DICT_TOKEN");
      config.dictionary_mt = std::move(e);
    } else if (kind != "local") {
      throw ConfigError("dictionary_mt: unknown kind '" + kind + "'");
    }
  }
  return config;
}

ExperimentConfig LoadExperimentConfig(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw MissingInputError("config file not found: " + path.string());
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return ParseExperimentConfig(doc, path);
}

ordered_json ConfigSnapshot(const ExperimentConfig& config) {
  ordered_json j;
  j["lexicon_path"] = config.lexicon_path.generic_string();
  j["corpus_path"] = config.corpus_path.generic_string();
  j["cache_dir"] = config.cache_dir.generic_string();

  ordered_json backend;
  backend["kind"] = config.backend.kind;
  if (config.backend.kind == "mock") {
    backend["rules"] = config.backend.rules;
  } else if (config.backend.kind == "http") {
    backend["endpoint"] = EndpointSnapshot(config.backend.endpoint);
    backend["max_attempts"] = config.backend.retry.max_attempts;
    backend["backoff_base_ms"] = config.backend.retry.base_delay.count();
  }
  j["backend"] = std::move(backend);

  auto pipelines = ordered_json::array();
  for (const PipelineConfig& p : config.pipelines) {
    pipelines.push_back(PipelineSnapshot(p));
  }
  j["pipelines"] = std::move(pipelines);
  j["eval"] = {{"max_order", config.eval.max_order},
               {"tokenization", TokenizationName(config.eval.tokenization)},
               {"sentence_smoothing", config.eval.sentence_smoothing}};
  if (config.dictionary_mt) {
    j["dictionary_mt"] = EndpointSnapshot(*config.dictionary_mt);
  } else {
    j["dictionary_mt"] = "local";
  }
  return j;
}

std::vector<CorpusPair> LoadCorpus(std::istream& is) {
  std::vector<CorpusPair> corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty()) continue;
    if (!utf8::IsValid(view)) {
      throw ConfigError(fmt::format("corpus line {}: invalid UTF-8", line_no));
    }
    const std::size_t tab = view.find('\t');
    if (tab == std::string_view::npos ||
        view.find('\t', tab + 1) != std::string_view::npos) {
      throw ConfigError(fmt::format(
          "corpus line {}: expected source<TAB>reference", line_no));
    }
    corpus.push_back({std::string(view.substr(0, tab)),
                      std::string(view.substr(tab + 1))});
  }
  return corpus;
}

std::vector<CorpusPair> LoadCorpusFile(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw MissingInputError("corpus file not found: " + path.string());
  return LoadCorpus(is);
}

std::unique_ptr<ChatBackend> MakeBackend(const BackendSpec& spec,
                                         const ResponseCache& cache,
                                         std::size_t parallelism) {
  if (spec.kind == "mock") return std::make_unique<MockBackend>(spec.rules);
  if (spec.kind == "replay") return std::make_unique<ReplayBackend>(cache);
  return std::make_unique<HttpBackend>(spec.endpoint, spec.retry,
                                       static_cast<std::ptrdiff_t>(parallelism));
}

std::string LabelFileStem(std::string_view label) {
  std::string stem;
  for (char c : label) {
    const bool keep = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
                      (c >= 'A' && c <= 'Z') || c == '-' || c == '.';
    stem.push_back(keep ? c : '_');
  }
  return stem;
}

void WriteLines(const fs::path& path, const std::vector<std::string>& lines) {
  std::string text;
  for (const std::string& line : lines) {
    for (char c : line) text.push_back(c == '\n' || c == '\r' ? ' ' : c);
    text.push_back('\n');
  }
  WriteText(path, text);
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw MissingInputError("file not found: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

ExperimentRunOutcome RunExperimentFromConfig(const fs::path& config_path,
                                             const ExperimentRunOptions& options) {
  const ExperimentConfig config = LoadExperimentConfig(config_path);

  LexiconLoadResult lexicon;
  try {
    lexicon = LoadLexiconFile(config.lexicon_path);
  } catch (const fs::filesystem_error&) {
    throw MissingInputError("lexicon file not found: " +
                            config.lexicon_path.string());
  } catch (const LexiconError& e) {
    throw ConfigError("lexicon " + config.lexicon_path.string() + ": " +
                      e.what());
  }
  for (const std::string& w : lexicon.warnings) spdlog::warn("lexicon: {}", w);
  const std::vector<CorpusPair> corpus = LoadCorpusFile(config.corpus_path);
  if (corpus.empty()) {
    throw ConfigError("corpus " + config.corpus_path.string() + " is empty");
  }

  ExperimentRunOutcome outcome;
  ordered_json& manifest = outcome.manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["config_path"] = config_path.generic_string();
  manifest["config"] = ConfigSnapshot(config);
  manifest["started_at"] = FormatRfc3339(options.clock());

  const fs::path out = options.out_dir;
  try {
    ResponseCache cache(config.cache_dir, options.clock);
    const std::size_t parallelism = options.parallelism.value_or(config.parallelism);
    auto backend = MakeBackend(config.backend, cache, parallelism);
    std::unique_ptr<ExternalDictionaryClient> external;
    if (config.dictionary_mt) {
      external = std::make_unique<ExternalDictionaryClient>(
          *config.dictionary_mt, config.backend.retry, &cache);
    }
    PipelineContext ctx{&lexicon.lexicon, backend.get(), &cache, external.get()};

    const ExperimentResult result =
        RunExperiment(config.pipelines, corpus, ctx, parallelism);
    outcome.backend_invocations = backend->invocations();

    fs::create_directories(out / "hypotheses");
    fs::create_directories(out / "traces");

    std::vector<std::string> references;
    for (const CorpusPair& p : corpus) references.push_back(p.reference);

    EvaluationReport report;
    report.config = config.eval;
    auto failures = ordered_json::array();
    auto diagnostics = ordered_json::array();
    auto outputs = ordered_json::object();
    std::set<TemplateId> templates;

    for (std::size_t c = 0; c < config.pipelines.size(); ++c) {
      const PipelineConfig& p = config.pipelines[c];
      const std::string stem = LabelFileStem(p.label);
      std::vector<std::string> hypotheses;
      std::string traces;
      for (std::size_t s = 0; s < corpus.size(); ++s) {
        const TranslationRecord& r = result.records[c][s];
        hypotheses.push_back(r.hypothesis);
        traces += ToJson(r).dump() + "\n";
        for (const std::string& d : r.diagnostics) {
          diagnostics.push_back({{"label", p.label}, {"index", s}, {"message", d}});
        }
        if (r.error) {
          failures.push_back({{"label", p.label},
                              {"index", s},
                              {"stage", r.error->stage},
                              {"message", r.error->message}});
        }
      }
      WriteLines(out / "hypotheses" / (stem + ".txt"), hypotheses);
      WriteText(out / "traces" / (stem + ".jsonl"), traces);
      outputs[p.label] = "hypotheses/" + stem + ".txt";
      report.systems.push_back(EvaluateSystem(p.label, p.WorkflowDescription(),
                                              hypotheses, references,
                                              config.eval));
      switch (p.variant) {
        case Variant::kBaseline: templates.insert(TemplateId::kBaselineTranslate); break;
        case Variant::kRagGenerate: templates.insert(TemplateId::kRagTranslateA); break;
        case Variant::kIntegratedRag: templates.insert(TemplateId::kRagTranslateB); break;
        case Variant::kDictThenRefine: templates.insert(TemplateId::kRefine); break;
        case Variant::kDictionary: break;
      }
    }

    const auto rows = report.Rows();
    outcome.report = RenderReport(rows);
    WriteText(out / "report.txt", outcome.report);
    WriteText(out / "report.json", ToJson(report).dump(2) + "\n");

    auto prompts = ordered_json::object();
    for (TemplateId id : templates) {
      prompts[std::string(TemplateName(id))] =
          Sha256Hex(GetTemplate(id).system_text);
    }
    auto scores = ordered_json::array();
    for (const SystemEvaluation& s : report.systems) {
      ordered_json sj;
      sj["label"] = s.label;
      sj["workflow"] = s.workflow;
      sj["bleu"] = s.corpus.bleu;
      sj["brevity_penalty"] = s.corpus.brevity_penalty;
      sj["ngram_precisions"] = s.corpus.precisions;
      scores.push_back(std::move(sj));
    }
    manifest["corpus_size"] = corpus.size();
    manifest["prompts"] = std::move(prompts);
    manifest["outputs"] = std::move(outputs);
    manifest["scores"] = std::move(scores);
    manifest["failures"] = std::move(failures);
    manifest["diagnostics"] = std::move(diagnostics);
    manifest["status"] = "ok";
    manifest["error"] = nullptr;
  } catch (const std::exception& e) {
    manifest["status"] = "failed";
    manifest["error"] = e.what();
    outcome.exit_code = 3;
  }
  manifest["finished_at"] = FormatRfc3339(options.clock());

  std::error_code ec;
  fs::create_directories(out, ec);
  WriteText(out / "manifest.json", manifest.dump(2) + "\n");
  return outcome;
}

}  // namespace ragmt
