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

#ifndef RAGMT_REPORT_H_
#define RAGMT_REPORT_H_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ragmt/bleu.h"

namespace ragmt {

struct ReportRow {
  std::string label;
  std::string workflow;
  double bleu = 0.0;
};

// Fixed-width table, one row per entry in the given order:
//
//   Models  | Workflow Design          | BLEU
//   --------+--------------------------+-----
//   Model 0 | Baseline with Gemini 2.0 | 0.18
//
// Column widths count Unicode scalars. Scores print as 0.xx.
std::string RenderReport(std::span<const ReportRow> rows);

struct SystemEvaluation {
  std::string label;
  std::string workflow;
  BleuScore corpus;
  std::vector<double> sentence_bleu;  // corpus order
};

struct EvaluationReport {
  EvalConfig config;
  std::vector<SystemEvaluation> systems;

  std::vector<ReportRow> Rows() const;
};

// Scores one system's hypotheses against the references. Throws
// std::invalid_argument when the lists are empty or misaligned.
SystemEvaluation EvaluateSystem(std::string label, std::string workflow,
                                const std::vector<std::string>& hypotheses,
                                const std::vector<std::string>& references,
                                const EvalConfig& config);

nlohmann::ordered_json ToJson(const BleuScore& score);
nlohmann::ordered_json ToJson(const EvaluationReport& report);

}  // namespace ragmt

#endif  // RAGMT_REPORT_H_
