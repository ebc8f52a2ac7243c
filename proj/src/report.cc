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

#include "ragmt/report.h"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

#include "ragmt/utf8.h"

namespace ragmt {
namespace {

constexpr std::string_view kModelsHeader = "Models";
constexpr std::string_view kWorkflowHeader = "Workflow Design";
constexpr std::string_view kBleuHeader = "BLEU";

std::string Pad(std::string_view s, std::size_t width) {
  std::string out(s);
  const std::size_t len = utf8::Length(s);
  if (len < width) out.append(width - len, ' ');
  return out;
}

}  // namespace

std::string RenderReport(std::span<const ReportRow> rows) {
  std::size_t label_w = kModelsHeader.size();
  std::size_t workflow_w = kWorkflowHeader.size();
  std::vector<std::string> scores;
  for (const ReportRow& r : rows) {
    label_w = std::max(label_w, utf8::Length(r.label));
    workflow_w = std::max(workflow_w, utf8::Length(r.workflow));
    scores.push_back(fmt::format("{:.2f}", r.bleu));
  }
  std::size_t bleu_w = kBleuHeader.size();
  for (const std::string& s : scores) bleu_w = std::max(bleu_w, s.size());

  std::string out;
  out += Pad(kModelsHeader, label_w) + " | " + Pad(kWorkflowHeader, workflow_w) +
         " | " + std::string(kBleuHeader) + "\n";
  out += std::string(label_w + 1, '-') + "+" + std::string(workflow_w + 2, '-') +
         "+" + std::string(bleu_w + 1, '-') + "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += Pad(rows[i].label, label_w) + " | " +
           Pad(rows[i].workflow, workflow_w) + " | " + scores[i] + "\n";
  }
  return out;
}

std::vector<ReportRow> EvaluationReport::Rows() const {
  std::vector<ReportRow> rows;
  for (const SystemEvaluation& s : systems) {
    rows.push_back({s.label, s.workflow, s.corpus.bleu});
  }
  return rows;
}

SystemEvaluation EvaluateSystem(std::string label, std::string workflow,
                                const std::vector<std::string>& hypotheses,
                                const std::vector<std::string>& references,
                                const EvalConfig& config) {
  if (hypotheses.size() != references.size()) {
    throw std::invalid_argument(
        fmt::format("{} hypotheses for {} references", hypotheses.size(),
                    references.size()));
  }
  std::vector<SentencePair> pairs;
  SystemEvaluation eval;
  eval.label = std::move(label);
  eval.workflow = std::move(workflow);
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    pairs.push_back({hypotheses[i], references[i]});
    eval.sentence_bleu.push_back(
        SentenceBleu(hypotheses[i], references[i], config).bleu);
  }
  eval.corpus = CorpusBleu(pairs, config);
  return eval;
}

nlohmann::ordered_json ToJson(const BleuScore& score) {
  nlohmann::ordered_json j;
  j["bleu"] = score.bleu;
  j["brevity_penalty"] = score.brevity_penalty;
  j["ngram_precisions"] = score.precisions;
  auto counts = nlohmann::ordered_json::array();
  for (const NgramCounts& c : score.counts) {
    counts.push_back({{"clipped", c.clipped}, {"total", c.total}});
  }
  j["ngram_counts"] = std::move(counts);
  j["candidate_length"] = score.candidate_length;
  j["reference_length"] = score.reference_length;
  return j;
}

nlohmann::ordered_json ToJson(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  j["config"] = {
      {"max_order", report.config.max_order},
      {"tokenization", TokenizationName(report.config.tokenization)},
      {"sentence_smoothing", report.config.sentence_smoothing}};
  auto systems = nlohmann::ordered_json::array();
  for (const SystemEvaluation& s : report.systems) {
    nlohmann::ordered_json sj;
    sj["label"] = s.label;
    sj["workflow"] = s.workflow;
    sj["corpus_bleu"] = ToJson(s.corpus);
    sj["sentence_bleu"] = s.sentence_bleu;
    systems.push_back(std::move(sj));
  }
  j["systems"] = std::move(systems);
  return j;
}

}  // namespace ragmt
