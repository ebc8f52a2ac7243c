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

#include "ragmt/prompting.h"

namespace ragmt {
namespace {

constexpr std::string_view kBaselineText =
    "You are an expert in the grammar of Taiwanese Hakka (Sixiàn "
    "dialect). Please translate the user's Mandarin content into Sixiàn "
    "Hakka word for word, in a professional and precise manner, ensuring "
    "that the sentence remains smooth and natural. Limit your response to 50 "
    "characters or fewer, and omit any additional information.";

constexpr std::string_view kRagAText =
    "You are a language expert in Taiwanese Hakka, responsible for "
    "converting the user's Mandarin sentence into a colloquial yet "
    "professional Hakka expression. First, use Jieba for tokenization, then "
    "construct a naturally fluent Hakka sentence by referring to the "
    "knowledge base entries (from Mandarin to Hakka). Ensure the output "
    "aligns with spoken usage. Retain the original punctuation, avoid adding "
    "any non-text symbols, and if a term is not found in the knowledge base, "
    "use the original Mandarin characters.";

constexpr std::string_view kRagBText =
    "You are a Hakka language expert, responsible for converting the user's "
    "Mandarin sentence into a colloquial yet professional Hakka expression. "
    "First, use Jieba to segment the text, then assemble a naturally fluent "
    "Hakka sentence according to the knowledge base entries (Mandarin column "
    "to Hakka column), ensuring it reflects spoken conventions. Retain "
    "original punctuation and avoid adding non-text symbols; if the "
    "knowledge base lacks a matching term, use the original Mandarin "
    "characters.";

constexpr std::string_view kRefineText =
    "You are an expert in Hakka grammar. Based on your expertise, please "
    "revise the user's Hakka sentence to make it more colloquial and "
    "professional, ensuring the diction and grammar conform more closely to "
    "Hakka standards. The response is limited to 50 characters or fewer. "
    "Retain the original punctuation, refrain from inserting any non-text "
    "symbols, and provide only one sentence with colloquial modifications. "
    "Omit all additional content.";

const std::array<PromptTemplate, 4> kTemplates = {{
    {TemplateId::kBaselineTranslate, "baseline_translate", kBaselineText,
     false, 50},
    {TemplateId::kRagTranslateA, "rag_translate_a", kRagAText, true,
     std::nullopt},
    {TemplateId::kRagTranslateB, "rag_translate_b", kRagBText, true,
     std::nullopt},
    {TemplateId::kRefine, "refine", kRefineText, false, 50},
}};

}  // namespace

std::string_view TemplateName(TemplateId id) { return GetTemplate(id).name; }

const PromptTemplate& GetTemplate(TemplateId id) {
  for (const PromptTemplate& t : kTemplates) {
    if (t.id == id) return t;
  }
  throw PromptError("unknown template id");
}

const PromptTemplate& GetTemplate(std::string_view name) {
  for (const PromptTemplate& t : kTemplates) {
    if (t.name == name) return t;
  }
  throw PromptError("unknown template '" + std::string(name) + "'");
}

RenderedPrompt Render(const PromptTemplate& tmpl, std::string_view user_text,
                      std::optional<std::string_view> glossary) {
  RenderedPrompt out;
  out.system_text = std::string(tmpl.system_text);
  if (!tmpl.glossary_slot) {
    if (glossary) {
      throw PromptError("template '" + std::string(tmpl.name) +
                        "' has no glossary slot");
    }
    out.user_text = std::string(user_text);
    return out;
  }
  if (!glossary) {
    throw PromptError("template '" + std::string(tmpl.name) +
                      "' requires a glossary");
  }
  out.user_text = "Glossary:\n";
  out.user_text += glossary->empty() ? std::string_view("(none)") : *glossary;
  out.user_text += "\n\nSentence:\n";
  out.user_text += user_text;
  return out;
}

}  // namespace ragmt
