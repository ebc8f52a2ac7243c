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

#include "ragmt/retrieval.h"

#include <set>

namespace ragmt {

std::vector<RetrievedTerm> Retrieve(const Lexicon& lexicon,
                                    const std::vector<Segment>& segments) {
  std::vector<RetrievedTerm> terms;
  terms.reserve(segments.size());
  for (const Segment& s : segments) {
    if (const LexiconEntry* e = lexicon.Lookup(s.text)) {
      terms.push_back({s.text, e->target, true});
    } else {
      terms.push_back({s.text, s.text, false});
    }
  }
  return terms;
}

std::string GlossaryBlock(const std::vector<RetrievedTerm>& terms) {
  std::string out;
  std::set<std::string_view> seen;
  for (const RetrievedTerm& t : terms) {
    if (!t.matched || !seen.insert(t.source).second) continue;
    if (!out.empty()) out += '\n';
    out += t.source;
    out += " => ";
    out += t.target;
  }
  return out;
}

std::string JoinTargets(const std::vector<RetrievedTerm>& terms) {
  std::string out;
  for (const RetrievedTerm& t : terms) out += t.target;
  return out;
}

std::string DictionaryTranslate(const Lexicon& lexicon, std::string_view text) {
  return JoinTargets(Retrieve(lexicon, SegmentText(lexicon, text)));
}

}  // namespace ragmt
