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

#ifndef RAGMT_RETRIEVAL_H_
#define RAGMT_RETRIEVAL_H_

#include <string>
#include <string_view>
#include <vector>

#include "ragmt/lexicon.h"
#include "ragmt/segmenter.h"

namespace ragmt {

// A segment paired with its lexicon target. Unmatched segments carry their
// own source text as target.
struct RetrievedTerm {
  std::string source;
  std::string target;
  bool matched = false;

  friend bool operator==(const RetrievedTerm&, const RetrievedTerm&) = default;
};

std::vector<RetrievedTerm> Retrieve(const Lexicon& lexicon,
                                    const std::vector<Segment>& segments);

// One "source => target" line per distinct matched term, in first-occurrence
// order, joined by '\n' with no trailing newline. Empty if nothing matched.
std::string GlossaryBlock(const std::vector<RetrievedTerm>& terms);

// Concatenation of the terms' targets.
std::string JoinTargets(const std::vector<RetrievedTerm>& terms);

// Literal substitution translation: segment, replace matched segments with
// their targets, keep everything else verbatim.
std::string DictionaryTranslate(const Lexicon& lexicon, std::string_view text);

}  // namespace ragmt

#endif  // RAGMT_RETRIEVAL_H_
