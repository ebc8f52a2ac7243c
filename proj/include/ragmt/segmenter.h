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

// Dictionary-driven maximum-probability segmentation.
//
// Text is first split into maximal runs of one character class. Runs of
// whitespace, ASCII letters/digits and other symbols become single atomic
// segments. Han runs are segmented over a lattice of lexicon matches plus
// single-character fallback edges, maximizing
//
//   sum over segments of log(weight)
//
// where weight = frequency / total_frequency for lexicon entries, and
// unknown single characters score UnknownLogWeight(). Ties go to the
// partition with fewer segments, then to the one with the longer leftmost
// differing segment.

#ifndef RAGMT_SEGMENTER_H_
#define RAGMT_SEGMENTER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ragmt/lexicon.h"

namespace ragmt {

struct Segment {
  std::string text;
  std::size_t start = 0;  // scalar index, inclusive
  std::size_t end = 0;    // scalar index, exclusive
  bool in_lexicon = false;

  friend bool operator==(const Segment&, const Segment&) = default;
};

// log(0.5 / (total_frequency + 1)): strictly below any entry's log weight.
double UnknownLogWeight(const Lexicon& lexicon);

// Log weight one segment contributes to the objective.
double SegmentLogWeight(const Lexicon& lexicon, std::string_view piece);

// Throws utf8::DecodeError on malformed input.
std::vector<Segment> SegmentText(const Lexicon& lexicon, std::string_view text);

double PartitionScore(const Lexicon& lexicon,
                      const std::vector<Segment>& segments);

std::string JoinSegments(const std::vector<Segment>& segments,
                         std::string_view separator);

struct ScoredPartition {
  std::vector<Segment> segments;
  double score = 0.0;
};

inline constexpr std::size_t kDefaultEnumerationCap = 12;

// Brute-force enumeration of every legal partition (lexicon pieces or single
// characters inside Han runs, forced atomic pieces elsewhere). Exponential;
// throws std::invalid_argument when text is longer than max_length scalars.
std::vector<ScoredPartition> EnumeratePartitions(
    const Lexicon& lexicon, std::string_view text,
    std::size_t max_length = kDefaultEnumerationCap);

}  // namespace ragmt

#endif  // RAGMT_SEGMENTER_H_
