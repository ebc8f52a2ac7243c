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

#include "ragmt/lexicon.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <system_error>
#include <utility>

namespace ragmt {
namespace {

bool HasControlSeparator(std::string_view s) {
  return s.find_first_of("\t\n\r") != std::string_view::npos;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t tab = line.find('\t', begin);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
}

std::string_view TrimAscii(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t'; };
  auto b = std::find_if(s.begin(), s.end(), not_space);
  auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return b < e ? std::string_view(&*b, static_cast<std::size_t>(e - b))
               : std::string_view();
}

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r';
  });
}

std::string LinePrefix(std::size_t line) {
  return "line " + std::to_string(line) + ": ";
}

}  // namespace

bool Lexicon::Insert(LexiconEntry entry) {
  if (entry.source.empty()) throw LexiconError("empty source field", 0);
  if (entry.target.empty()) throw LexiconError("empty target field", 0);
  if (HasControlSeparator(entry.source) || HasControlSeparator(entry.target)) {
    throw LexiconError("field contains tab or newline", 0);
  }
  if (entry.frequency == 0) entry.frequency = 1;
  const std::size_t len = utf8::Length(entry.source);

  auto it = entries_.find(entry.source);
  if (it == entries_.end()) {
    total_frequency_ += entry.frequency;
    max_source_len_ = std::max(max_source_len_, len);
    std::string key = entry.source;
    entries_.emplace(std::move(key), std::move(entry));
    return false;
  }
  if (entry.frequency >= it->second.frequency) {
    total_frequency_ = total_frequency_ - it->second.frequency + entry.frequency;
    it->second = std::move(entry);
  }
  return true;
}

const LexiconEntry* Lexicon::Lookup(std::string_view source) const {
  auto it = entries_.find(source);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<PrefixMatch> Lexicon::PrefixCandidates(std::string_view text,
                                                   std::size_t start) const {
  return PrefixCandidates(utf8::Text(text), start);
}

std::vector<PrefixMatch> Lexicon::PrefixCandidates(const utf8::Text& text,
                                                   std::size_t start) const {
  if (start >= text.size()) {
    throw std::out_of_range("prefix start " + std::to_string(start) +
                            " outside text of length " +
                            std::to_string(text.size()));
  }
  std::vector<PrefixMatch> matches;
  const std::size_t last = std::min(text.size(), start + max_source_len_);
  for (std::size_t end = start + 1; end <= last; ++end) {
    if (const LexiconEntry* e = Lookup(text.Slice(start, end))) {
      matches.push_back({end, e});
    }
  }
  return matches;
}

void Lexicon::WriteTsv(std::ostream& os) const {
  for (const auto& [source, entry] : entries_) {
    os << entry.source << '\t' << entry.target << '\t' << entry.frequency
       << '\n';
  }
}

LexiconLoadResult LoadLexicon(std::istream& is) {
  LexiconLoadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (IsBlank(view) || view.front() == '#') continue;

    if (!utf8::IsValid(view)) {
      throw LexiconError(LinePrefix(line_no) + "invalid UTF-8", line_no);
    }
    const auto fields = SplitTabs(view);
    if (fields.size() < 2 || fields.size() > 3) {
      throw LexiconError(LinePrefix(line_no) + "expected 2 or 3 tab-separated "
                             "columns, found " + std::to_string(fields.size()),
                         line_no);
    }
    if (fields[0].empty()) {
      throw LexiconError(LinePrefix(line_no) + "empty source field", line_no);
    }
    if (fields[1].empty()) {
      throw LexiconError(LinePrefix(line_no) + "empty target field", line_no);
    }

    LexiconEntry entry{std::string(fields[0]), std::string(fields[1]), 1, {}};
    if (fields.size() == 3) {
      const std::string_view freq = TrimAscii(fields[2]);
      if (!freq.empty()) {
        std::uint64_t value = 0;
        auto [ptr, ec] =
            std::from_chars(freq.data(), freq.data() + freq.size(), value);
        if (ec != std::errc() || ptr != freq.data() + freq.size()) {
          throw LexiconError(LinePrefix(line_no) + "invalid frequency '" +
                                 std::string(freq) + "'",
                             line_no);
        }
        entry.frequency = value;
      }
    }

    const std::string source = entry.source;
    const std::uint64_t incoming = std::max<std::uint64_t>(entry.frequency, 1);
    const LexiconEntry* previous = result.lexicon.Lookup(source);
    const std::uint64_t previous_freq = previous ? previous->frequency : 0;
    if (result.lexicon.Insert(std::move(entry))) {
      result.warnings.push_back(
          LinePrefix(line_no) + "duplicate source '" + source + "' merged (" +
          (incoming >= previous_freq ? "replaced" : "kept") +
          " earlier entry with frequency " + std::to_string(previous_freq) +
          ")");
    }
  }
  return result;
}

LexiconLoadResult LoadLexiconFile(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::filesystem::filesystem_error(
        "cannot open lexicon", path,
        std::make_error_code(std::errc::no_such_file_or_directory));
  }
  return LoadLexicon(is);
}

}  // namespace ragmt
