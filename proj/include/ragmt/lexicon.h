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

// Bilingual source -> target term table backing both dictionary translation
// and glossary retrieval.
//
// File format (UTF-8, one entry per line):
//
//   source<TAB>target[<TAB>frequency]
//
// Lines starting with '#' and blank lines are skipped. A missing or zero
// frequency counts as 1. When a source form repeats, the row with the
// higher frequency is kept (the later row on ties) and a warning is emitted.

#ifndef RAGMT_LEXICON_H_
#define RAGMT_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ragmt/utf8.h"

namespace ragmt {

struct LexiconEntry {
  std::string source;
  std::string target;
  std::uint64_t frequency = 1;
  std::vector<std::string> tags;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

class LexiconError : public std::runtime_error {
 public:
  // line is 1-based; 0 means the error is not tied to a line.
  LexiconError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct PrefixMatch {
  std::size_t end;  // exclusive scalar index
  const LexiconEntry* entry;
};

class Lexicon {
 public:
  Lexicon() = default;

  // Inserts or merges. Returns true when an existing source form was merged.
  // Throws LexiconError for empty fields or fields containing tab/newline.
  bool Insert(LexiconEntry entry);

  const LexiconEntry* Lookup(std::string_view source) const;

  // Every entry whose source equals text[start, end) for some end, in
  // increasing end order. Throws std::out_of_range if start is not a valid
  // scalar index of text.
  std::vector<PrefixMatch> PrefixCandidates(std::string_view text,
                                            std::size_t start) const;
  std::vector<PrefixMatch> PrefixCandidates(const utf8::Text& text,
                                            std::size_t start) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t max_source_len() const { return max_source_len_; }
  std::uint64_t total_frequency() const { return total_frequency_; }

  // Ordered by source bytes.
  const std::map<std::string, LexiconEntry, std::less<>>& entries() const {
    return entries_;
  }

  // Writes the TSV form; Load() of the output reproduces this lexicon.
  void WriteTsv(std::ostream& os) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
  std::size_t max_source_len_ = 0;
  std::uint64_t total_frequency_ = 0;
};

struct LexiconLoadResult {
  Lexicon lexicon;
  std::vector<std::string> warnings;
};

// Throws LexiconError naming the offending line for malformed rows, empty
// fields, bad frequencies and undecodable bytes.
LexiconLoadResult LoadLexicon(std::istream& is);

// Throws std::filesystem::filesystem_error if the file cannot be opened.
LexiconLoadResult LoadLexiconFile(const std::filesystem::path& path);

}  // namespace ragmt

#endif  // RAGMT_LEXICON_H_
