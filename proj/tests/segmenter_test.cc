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

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.h"

namespace ragmt {
namespace {

using testing::EndPositions;
using testing::ExpectedOptimal;

Lexicon MakeLexicon(
    std::initializer_list<std::pair<std::string, std::uint64_t>> entries) {
  Lexicon l;
  for (const auto& [source, freq] : entries) l.Insert({source, "t", freq});
  return l;
}

std::vector<std::string> Texts(const std::vector<Segment>& segments) {
  std::vector<std::string> out;
  for (const Segment& s : segments) out.push_back(s.text);
  return out;
}

TEST(SegmenterTest, EmptyText) {
  const Lexicon l = MakeLexicon({{"甲", 1}});
  EXPECT_TRUE(SegmentText(l, "").empty());
}

// {AB:2, A:1, B:1} with A=甲, B=乙. log(2/4) beats 2*log(1/4).
TEST(SegmenterTest, PrefersWholeWord) {
  const Lexicon l = MakeLexicon({{"甲乙", 2}, {"甲", 1}, {"乙", 1}});
  const auto segs = SegmentText(l, "甲乙");
  EXPECT_EQ(Texts(segs), (std::vector<std::string>{"甲乙"}));
  EXPECT_TRUE(segs[0].in_lexicon);
  EXPECT_NEAR(PartitionScore(l, segs), std::log(0.5), 1e-12);
  EXPECT_NEAR(PartitionScore(l, segs), -0.693, 5e-4);
}

TEST(SegmenterTest, PunctuationIsItsOwnSegment) {
  const Lexicon l = MakeLexicon({{"你好", 5}, {"世界", 3}});
  const auto segs = SegmentText(l, "你好，世界");
  EXPECT_EQ(Texts(segs), (std::vector<std::string>{"你好", "，", "世界"}));
  EXPECT_EQ(EndPositions(segs), (std::vector<std::size_t>{2, 3, 5}));
  EXPECT_TRUE(segs[0].in_lexicon);
  EXPECT_FALSE(segs[1].in_lexicon);
  EXPECT_TRUE(segs[2].in_lexicon);
}

TEST(SegmenterTest, NonHanRunsAreAtomic) {
  const Lexicon l = MakeLexicon({{"你", 1}});
  const auto segs = SegmentText(l, "你GPT-4  ok，。你");
  EXPECT_EQ(Texts(segs), (std::vector<std::string>{"你", "GPT", "-", "4", "  ",
                                                   "ok", "，。", "你"}));
}

TEST(SegmenterTest, UnknownFloorBelowEveryEntry) {
  const Lexicon l = MakeLexicon({{"甲", 1}, {"乙", 1000}});
  EXPECT_DOUBLE_EQ(UnknownLogWeight(l), std::log(0.5 / 1002.0));
  for (const auto& [source, entry] : l.entries()) {
    EXPECT_LT(UnknownLogWeight(l), SegmentLogWeight(l, source));
  }
  EXPECT_DOUBLE_EQ(UnknownLogWeight(Lexicon()), std::log(0.5));
}

TEST(SegmenterTest, SpansAreScalarIndices) {
  const Lexicon l = MakeLexicon({{"𠊎兜", 2}});
  const auto segs = SegmentText(l, "𠊎兜去");
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].start, 0u);
  EXPECT_EQ(segs[0].end, 2u);
  EXPECT_EQ(segs[1].start, 2u);
  EXPECT_EQ(segs[1].end, 3u);
}

// Total 6: log(1/6) for 甲乙 equals log(2/6) + log(3/6) for 甲|乙.
TEST(SegmenterTest, ExactTieGoesToFewerSegments) {
  const Lexicon l = MakeLexicon({{"甲乙", 1}, {"甲", 2}, {"乙", 3}});
  EXPECT_NEAR(SegmentLogWeight(l, "甲乙"),
              SegmentLogWeight(l, "甲") + SegmentLogWeight(l, "乙"), 1e-12);
  EXPECT_EQ(Texts(SegmentText(l, "甲乙")), (std::vector<std::string>{"甲乙"}));
}

// Total 4: 甲乙|丙 and 甲|乙丙 both score 2 log(1/4). The first has the
// larger end at the first difference.
TEST(SegmenterTest, ExactTieLeftmostLongestWins) {
  const Lexicon l =
      MakeLexicon({{"甲乙", 1}, {"乙丙", 1}, {"丙", 1}, {"甲", 1}});
  EXPECT_EQ(Texts(SegmentText(l, "甲乙丙")),
            (std::vector<std::string>{"甲乙", "丙"}));
}

TEST(SegmenterTest, JoinSegments) {
  const Lexicon l = MakeLexicon({{"你好", 5}, {"世界", 3}});
  EXPECT_EQ(JoinSegments(SegmentText(l, "你好，世界"), "/"), "你好/，/世界");
  EXPECT_EQ(JoinSegments({}, "/"), "");
}

TEST(SegmenterTest, InvalidUtf8Throws) {
  EXPECT_THROW(SegmentText(Lexicon(), "\xe4\xbd"), utf8::DecodeError);
}

TEST(EnumeratePartitionsTest, Examples) {
  const Lexicon l = MakeLexicon({{"甲乙", 2}, {"甲", 1}, {"乙", 1}});
  auto parts = EnumeratePartitions(l, "甲乙");
  ASSERT_EQ(parts.size(), 2u);
  std::vector<double> scores = {parts[0].score, parts[1].score};
  std::sort(scores.begin(), scores.end());
  EXPECT_NEAR(scores[0], 2 * std::log(0.25), 1e-12);
  EXPECT_NEAR(scores[0], -2.773, 5e-4);
  EXPECT_NEAR(scores[1], -0.693, 5e-4);

  parts = EnumeratePartitions(l, "甲");
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(Texts(parts[0].segments), (std::vector<std::string>{"甲"}));

  parts = EnumeratePartitions(l, "");
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_TRUE(parts[0].segments.empty());
  EXPECT_EQ(parts[0].score, 0.0);
}

TEST(EnumeratePartitionsTest, CountsAllCompositionsOfUnknownText) {
  // Only single-character pieces are legal: exactly one partition.
  EXPECT_EQ(EnumeratePartitions(Lexicon(), "甲乙丙丁").size(), 1u);
  // Every substring known: 2^(n-1) compositions.
  const Lexicon l = MakeLexicon(
      {{"甲", 1}, {"甲甲", 1}, {"甲甲甲", 1}, {"甲甲甲甲", 1}});
  EXPECT_EQ(EnumeratePartitions(l, "甲甲甲甲").size(), 8u);
}

TEST(EnumeratePartitionsTest, CapIsEnforced) {
  std::string text;
  for (int i = 0; i < 13; ++i) text += "甲";
  EXPECT_THROW(EnumeratePartitions(Lexicon(), text), std::invalid_argument);
  EXPECT_NO_THROW(EnumeratePartitions(Lexicon(), text, 13));
}

const std::vector<std::string> kAlphabet = {"甲", "乙", "丙", "丁"};

TEST(SegmenterPropertyTest, MatchesBruteForceOracle) {
  testing::Rng rng(21);
  std::uniform_int_distribution<std::size_t> len(0, 8);
  for (int i = 0; i < 400; ++i) {
    const Lexicon l = testing::RandomLexicon(rng, kAlphabet, 10, 4, 6);
    const std::string text = testing::RandomString(rng, kAlphabet, len(rng));
    const auto parts = EnumeratePartitions(l, text);
    const auto& expected = ExpectedOptimal(parts);
    const auto got = SegmentText(l, text);
    EXPECT_NEAR(PartitionScore(l, got), expected.score,
                1e-9 * std::max(1.0, std::abs(expected.score)))
        << text;
    EXPECT_EQ(EndPositions(got), EndPositions(expected.segments)) << text;
  }
}

TEST(SegmenterPropertyTest, LosslessOnArbitraryUnicode) {
  testing::Rng rng(22);
  const std::vector<std::string> han = {"你", "好", "世", "界", "，", "a", " "};
  for (int i = 0; i < 1000; ++i) {
    const Lexicon l = testing::RandomLexicon(rng, han, 8, 3, 9);
    const std::string text = testing::RandomUnicode(rng, 24);
    const auto segs = SegmentText(l, text);
    EXPECT_EQ(JoinSegments(segs, ""), text);
    std::size_t pos = 0;
    const utf8::Text t(text);
    for (const Segment& s : segs) {
      EXPECT_EQ(s.start, pos);
      EXPECT_LT(s.start, s.end);
      EXPECT_EQ(s.text, t.Slice(s.start, s.end));
      EXPECT_EQ(s.in_lexicon, l.Lookup(s.text) != nullptr);
      pos = s.end;
    }
    EXPECT_EQ(pos, t.size());
  }
}

TEST(SegmenterPropertyTest, Deterministic) {
  testing::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const Lexicon l = testing::RandomLexicon(rng, kAlphabet, 10, 3, 5);
    const std::string text = testing::RandomString(rng, kAlphabet, 10);
    EXPECT_EQ(SegmentText(l, text), SegmentText(l, text));
  }
}

// Inserting an entry raises the total frequency, which rescales every
// weight. Monotonicity is therefore checked under the new lexicon's weights:
// the new optimum is never below the score of the previous optimum.
TEST(SegmenterPropertyTest, AddingEntryNeverLowersOptimum) {
  testing::Rng rng(24);
  std::uniform_int_distribution<std::size_t> len(1, 3);
  int grew = 0;
  for (int i = 0; i < 500; ++i) {
    Lexicon l = testing::RandomLexicon(rng, kAlphabet, 6, 3, 5);
    const std::string text = testing::RandomString(rng, kAlphabet, 8);
    const auto old_best = SegmentText(l, text);
    const std::string extra = testing::RandomString(rng, kAlphabet, len(rng));
    if (l.Lookup(extra) != nullptr) continue;
    l.Insert({extra, "x", 1 + static_cast<std::uint64_t>(i % 4)});
    const double rescored = PartitionScore(l, old_best);
    const double optimum = PartitionScore(l, SegmentText(l, text));
    EXPECT_GE(optimum, rescored - 1e-9 * std::max(1.0, std::abs(rescored)));
    if (optimum > rescored + 1e-9) ++grew;
  }
  EXPECT_GT(grew, 0);
}

}  // namespace
}  // namespace ragmt
