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

#include "ragmt/segmenter.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ragmt {
namespace {

// Scores that differ by less than this are treated as ties, so that
// mathematically equal sums of logs accumulated in different orders compare
// equal.
bool NearlyEqual(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(a));
}

double EntryLogWeight(const Lexicon& lexicon, const LexiconEntry& entry) {
  return std::log(static_cast<double>(entry.frequency) /
                  static_cast<double>(lexicon.total_frequency()));
}

Segment MakeSegment(const Lexicon& lexicon, const utf8::Text& text,
                    std::size_t start, std::size_t end) {
  std::string piece(text.Slice(start, end));
  const bool known = lexicon.Lookup(piece) != nullptr;
  return Segment{std::move(piece), start, end, known};
}

std::size_t RunEnd(const utf8::Text& text, std::size_t start) {
  const utf8::CharClass cls = utf8::Classify(text[start]);
  std::size_t end = start + 1;
  while (end < text.size() && utf8::Classify(text[end]) == cls) ++end;
  return end;
}

struct Cell {
  double score = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  std::size_t next = 0;
};

// Backward DP over the Han run [begin, end). best[k] describes the optimal
// partition of [k, end).
void SegmentHanRun(const Lexicon& lexicon, const utf8::Text& text,
                   std::size_t begin, std::size_t end,
                   std::vector<Segment>& out) {
  const double unknown = UnknownLogWeight(lexicon);
  std::vector<Cell> best(end - begin + 1);
  best.back() = Cell{0.0, 0, end};

  for (std::size_t k = end; k-- > begin;) {
    Cell& cell = best[k - begin];
    auto consider = [&](std::size_t next, double weight) {
      const Cell& rest = best[next - begin];
      const double score = weight + rest.score;
      const std::size_t count = rest.count + 1;
      bool better;
      if (cell.count == 0) {
        better = true;
      } else if (!NearlyEqual(score, cell.score)) {
        better = score > cell.score;
      } else if (count != cell.count) {
        better = count < cell.count;
      } else {
        better = next > cell.next;
      }
      if (better) cell = Cell{score, count, next};
    };

    bool single_known = false;
    for (const PrefixMatch& m : lexicon.PrefixCandidates(text, k)) {
      if (m.end > end) break;
      if (m.end == k + 1) single_known = true;
      consider(m.end, EntryLogWeight(lexicon, *m.entry));
    }
    if (!single_known) consider(k + 1, unknown);
  }

  for (std::size_t k = begin; k < end; k = best[k - begin].next) {
    out.push_back(MakeSegment(lexicon, text, k, best[k - begin].next));
  }
}

void Enumerate(const Lexicon& lexicon, const utf8::Text& text,
               std::size_t pos, std::vector<Segment>& prefix, double score,
               std::vector<ScoredPartition>& out) {
  if (pos == text.size()) {
    out.push_back({prefix, score});
    return;
  }
  const std::size_t run_end = RunEnd(text, pos);
  auto descend = [&](std::size_t end) {
    prefix.push_back(MakeSegment(lexicon, text, pos, end));
    Enumerate(lexicon, text, end, prefix,
              score + SegmentLogWeight(lexicon, prefix.back().text), out);
    prefix.pop_back();
  };

  if (utf8::Classify(text[pos]) != utf8::CharClass::kHan) {
    descend(run_end);
    return;
  }
  for (std::size_t end = pos + 1; end <= run_end; ++end) {
    if (end == pos + 1 || lexicon.Lookup(text.Slice(pos, end)) != nullptr) {
      descend(end);
    }
  }
}

}  // namespace

double UnknownLogWeight(const Lexicon& lexicon) {
  return std::log(0.5 / (static_cast<double>(lexicon.total_frequency()) + 1.0));
}

double SegmentLogWeight(const Lexicon& lexicon, std::string_view piece) {
  if (const LexiconEntry* e = lexicon.Lookup(piece)) {
    return EntryLogWeight(lexicon, *e);
  }
  return UnknownLogWeight(lexicon);
}

std::vector<Segment> SegmentText(const Lexicon& lexicon,
                                 std::string_view text) {
  const utf8::Text decoded(text);
  std::vector<Segment> segments;
  std::size_t pos = 0;
  while (pos < decoded.size()) {
    const std::size_t run_end = RunEnd(decoded, pos);
    if (utf8::Classify(decoded[pos]) == utf8::CharClass::kHan) {
      SegmentHanRun(lexicon, decoded, pos, run_end, segments);
    } else {
      segments.push_back(MakeSegment(lexicon, decoded, pos, run_end));
    }
    pos = run_end;
  }
  return segments;
}

double PartitionScore(const Lexicon& lexicon,
                      const std::vector<Segment>& segments) {
  double score = 0.0;
  for (const Segment& s : segments) score += SegmentLogWeight(lexicon, s.text);
  return score;
}

std::string JoinSegments(const std::vector<Segment>& segments,
                         std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) out += separator;
    out += segments[i].text;
  }
  return out;
}

std::vector<ScoredPartition> EnumeratePartitions(const Lexicon& lexicon,
                                                 std::string_view text,
                                                 std::size_t max_length) {
  const utf8::Text decoded(text);
  if (decoded.size() > max_length) {
    throw std::invalid_argument("text of " + std::to_string(decoded.size()) +
                                " characters exceeds enumeration cap of " +
                                std::to_string(max_length));
  }
  std::vector<ScoredPartition> out;
  std::vector<Segment> prefix;
  Enumerate(lexicon, decoded, 0, prefix, 0.0, out);
  return out;
}

}  // namespace ragmt
