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

#ifndef RAGMT_PROMPTING_H_
#define RAGMT_PROMPTING_H_

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ragmt {

enum class TemplateId { kBaselineTranslate, kRagTranslateA, kRagTranslateB, kRefine };

inline constexpr std::array<TemplateId, 4> kAllTemplates = {
    TemplateId::kBaselineTranslate, TemplateId::kRagTranslateA,
    TemplateId::kRagTranslateB, TemplateId::kRefine};

class PromptError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The system prompts are fixed; only the user message varies per sentence.
struct PromptTemplate {
  TemplateId id;
  std::string_view name;
  std::string_view system_text;
  bool glossary_slot;
  // Output length the system text asks for, if any. Never enforced by
  // truncation.
  std::optional<std::size_t> output_char_limit;
};

std::string_view TemplateName(TemplateId id);

const PromptTemplate& GetTemplate(TemplateId id);

// Accepts baseline_translate, rag_translate_a, rag_translate_b, refine.
// Throws PromptError for anything else.
const PromptTemplate& GetTemplate(std::string_view name);

struct RenderedPrompt {
  std::string system_text;
  std::string user_text;

  friend bool operator==(const RenderedPrompt&, const RenderedPrompt&) = default;
};

// Baseline and refine templates send the sentence alone. Glossary templates
// send
//
//   Glossary:\n<glossary>\n\nSentence:\n<sentence>
//
// with an empty glossary written as "(none)". The sentence is never trimmed
// or normalized. Throws PromptError when the glossary argument does not match
// the template's slots.
RenderedPrompt Render(const PromptTemplate& tmpl, std::string_view user_text,
                      std::optional<std::string_view> glossary = std::nullopt);

}  // namespace ragmt

#endif  // RAGMT_PROMPTING_H_
