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

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.h"

namespace ragmt {
namespace {

LexiconLoadResult Load(const std::string& tsv) {
  std::istringstream is(tsv);
  return LoadLexicon(is);
}

std::vector<std::size_t> Ends(const std::vector<PrefixMatch>& matches) {
  std::vector<std::size_t> ends;
  for (const PrefixMatch& m : matches) ends.push_back(m.end);
  return ends;
}

TEST(LexiconTest, LoadsTwoRows) {
  const auto r = Load("你好\t若好\t5\n謝謝\t承蒙\t3\n");
  EXPECT_EQ(r.lexicon.size(), 2u);
  EXPECT_EQ(r.lexicon.total_frequency(), 8u);
  EXPECT_EQ(r.lexicon.max_source_len(), 2u);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(LexiconTest, DuplicateKeepsHigherFrequencyWithWarning) {
  const auto r = Load("你好\t若好\t5\n你好\t恁好\t2\n");
  ASSERT_EQ(r.lexicon.size(), 1u);
  const LexiconEntry* e = r.lexicon.Lookup("你好");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->target, "若好");
  EXPECT_EQ(e->frequency, 5u);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.lexicon.total_frequency(), 5u);
}

TEST(LexiconTest, DuplicateTieKeepsLaterRow) {
  const auto r = Load("你好\t若好\t2\n你好\t恁好\t2\n");
  EXPECT_EQ(r.lexicon.Lookup("你好")->target, "恁好");
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(LexiconTest, EmptyStream) {
  const auto r = Load("");
  EXPECT_TRUE(r.lexicon.empty());
  EXPECT_EQ(r.lexicon.total_frequency(), 0u);
  EXPECT_EQ(r.lexicon.max_source_len(), 0u);
}

TEST(LexiconTest, CommentsBlankLinesBomAndCrlf) {
  const auto r = Load("\xEF\xBB\xBF# header\r\n\r\n你好\t若好\r\n\n世界\t世界事\t0\n");
  EXPECT_EQ(r.lexicon.size(), 2u);
  EXPECT_EQ(r.lexicon.Lookup("你好")->frequency, 1u);
  EXPECT_EQ(r.lexicon.Lookup("世界")->frequency, 1u);  // zero normalizes
}

TEST(LexiconTest, ErrorsNameTheLine) {
  struct Case {
    std::string tsv;
    std::size_t line;
  };
  const Case cases[] = {
      {"a\tb\nonly-one-column\n", 2},
      {"a\tb\tc\td\n", 1},
      {"# c\n\tb\n", 2},
      {"x\ty\n\nz\t\n", 3},
      {"a\tb\tnot-a-number\n", 1},
      {"a\tb\t-3\n", 1},
      {"a\tb\nc\t\xff\n", 2},
  };
  for (const Case& c : cases) {
    try {
      Load(c.tsv);
      ADD_FAILURE() << "accepted: " << c.tsv;
    } catch (const LexiconError& e) {
      EXPECT_EQ(e.line(), c.line) << c.tsv;
      EXPECT_NE(std::string(e.what()).find("line " + std::to_string(c.line)),
                std::string::npos)
          << e.what();
    }
  }
}

TEST(LexiconTest, Lookup) {
  const auto r = Load("你好\t若好\t5\n謝謝\t承蒙\t3\n");
  ASSERT_NE(r.lexicon.Lookup("你好"), nullptr);
  EXPECT_EQ(r.lexicon.Lookup("你好")->target, "若好");
  EXPECT_EQ(r.lexicon.Lookup("不存在"), nullptr);
  EXPECT_EQ(r.lexicon.Lookup(""), nullptr);
}

TEST(LexiconTest, InsertRejectsBadFields) {
  Lexicon l;
  EXPECT_THROW(l.Insert({"", "x"}), LexiconError);
  EXPECT_THROW(l.Insert({"x", ""}), LexiconError);
  EXPECT_THROW(l.Insert({"a\tb", "x"}), LexiconError);
  EXPECT_THROW(l.Insert({"a", "x\ny"}), LexiconError);
}

TEST(LexiconTest, MaxSourceLenTracksMutation) {
  Lexicon l;
  l.Insert({"甲", "x", 1});
  EXPECT_EQ(l.max_source_len(), 1u);
  l.Insert({"甲乙丙", "y", 2});
  EXPECT_EQ(l.max_source_len(), 3u);
  EXPECT_EQ(l.total_frequency(), 3u);
  l.Insert({"甲乙丙", "z", 7});  // merge replaces frequency 2 with 7
  EXPECT_EQ(l.total_frequency(), 8u);
}

TEST(LexiconTest, PrefixCandidatesExamples) {
  Lexicon l;
  l.Insert({"AB", "x"});
  l.Insert({"ABC", "y"});
  l.Insert({"A", "z"});
  const auto at0 = l.PrefixCandidates("ABCD", 0);
  EXPECT_EQ(Ends(at0), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(at0[0].entry->source, "A");
  EXPECT_EQ(at0[2].entry->source, "ABC");
  EXPECT_TRUE(l.PrefixCandidates("ABCD", 3).empty());
  EXPECT_EQ(Ends(l.PrefixCandidates("A", 0)), (std::vector<std::size_t>{1}));
  EXPECT_THROW(l.PrefixCandidates("ABCD", 4), std::out_of_range);
  EXPECT_THROW(l.PrefixCandidates("", 0), std::out_of_range);
}

TEST(LexiconTest, PrefixCandidatesUseScalarIndices) {
  Lexicon l;
  l.Insert({"世界", "世界事"});
  const auto m = l.PrefixCandidates("你好世界", 2);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].end, 4u);
}

TEST(LexiconTest, LoadFileMissing) {
  EXPECT_THROW(LoadLexiconFile("/nonexistent/lexicon.tsv"),
               std::filesystem::filesystem_error);
}

const std::vector<std::string> kHan = {"甲", "乙", "丙", "丁", "戊"};

TEST(LexiconPropertyTest, TsvRoundTrip) {
  testing::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const Lexicon l = testing::RandomLexicon(rng, kHan, 12, 4, 50);
    std::stringstream ss;
    l.WriteTsv(ss);
    const auto reloaded = LoadLexicon(ss);
    EXPECT_EQ(reloaded.lexicon, l);
    EXPECT_TRUE(reloaded.warnings.empty());
    EXPECT_EQ(reloaded.lexicon.total_frequency(), l.total_frequency());
    EXPECT_EQ(reloaded.lexicon.max_source_len(), l.max_source_len());
  }
}

TEST(LexiconPropertyTest, PrefixCandidatesBoundedAndSound) {
  testing::Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const Lexicon l = testing::RandomLexicon(rng, kHan, 10, 4, 9);
    const std::string text = testing::RandomString(rng, kHan, 1 + i % 9);
    const utf8::Text t(text);
    for (std::size_t s = 0; s < t.size(); ++s) {
      const auto m = l.PrefixCandidates(t, s);
      EXPECT_LE(m.size(), l.max_source_len());
      for (std::size_t k = 0; k < m.size(); ++k) {
        EXPECT_EQ(m[k].entry->source, t.Slice(s, m[k].end));
        if (k > 0) EXPECT_LT(m[k - 1].end, m[k].end);
      }
      // Completeness: every lexicon substring starting at s is reported.
      std::size_t expected = 0;
      for (std::size_t e = s + 1; e <= t.size(); ++e) {
        if (l.Lookup(t.Slice(s, e)) != nullptr) ++expected;
      }
      EXPECT_EQ(m.size(), expected);
    }
  }
}

TEST(LexiconPropertyTest, LookupReturnsEveryEntry) {
  testing::Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const Lexicon l = testing::RandomLexicon(rng, kHan, 15, 3, 20);
    std::uint64_t total = 0;
    std::size_t max_len = 0;
    for (const auto& [source, entry] : l.entries()) {
      const LexiconEntry* found = l.Lookup(source);
      ASSERT_NE(found, nullptr);
      EXPECT_EQ(*found, entry);
      EXPECT_GE(entry.frequency, 1u);
      total += entry.frequency;
      max_len = std::max(max_len, utf8::Length(source));
    }
    EXPECT_EQ(l.total_frequency(), total);
    EXPECT_EQ(l.max_source_len(), max_len);
  }
}

}  // namespace
}  // namespace ragmt
