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

#include "ragmt/utf8.h"

#include <gtest/gtest.h>

namespace ragmt::utf8 {
namespace {

TEST(Utf8Test, ScalarIndexingOverMixedWidths) {
  const std::string s = "a你𠊎é";
  Text t(s);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0], U'a');
  EXPECT_EQ(t[1], U'你');
  EXPECT_EQ(t[2], U'\U0002028E');
  EXPECT_EQ(t.Slice(1, 3), "你𠊎");
  EXPECT_EQ(t.Slice(0, 4), s);
  EXPECT_EQ(t.Slice(2, 2), "");
}

TEST(Utf8Test, RejectsMalformedInput) {
  EXPECT_FALSE(IsValid("\xff"));
  EXPECT_FALSE(IsValid("\xe4\xbd"));          // truncated
  EXPECT_FALSE(IsValid("\xc0\xaf"));          // overlong
  EXPECT_FALSE(IsValid("\xed\xa0\x80"));      // surrogate
  EXPECT_FALSE(IsValid("\xf4\x90\x80\x80"));  // above U+10FFFF
  EXPECT_THROW(Text("ab\xff"), DecodeError);
  try {
    Text bad("ab\xff");
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.byte_offset(), 2u);
  }
}

TEST(Utf8Test, EncodeDecodeRoundTrip) {
  for (char32_t cp : {U'\0', U'A', U'é', U'你', U'\U0001F600',
                      U'\U0010FFFF'}) {
    const std::string bytes = Encode(cp);
    const std::vector<char32_t> decoded = Decode(bytes);
    ASSERT_EQ(decoded.size(), 1u);
    EXPECT_EQ(decoded[0], cp);
  }
  EXPECT_EQ(Length("你好，世界"), 5u);
}

TEST(Utf8Test, Classification) {
  EXPECT_EQ(Classify(U'你'), CharClass::kHan);
  EXPECT_EQ(Classify(U'\U0002028E'), CharClass::kHan);
  EXPECT_EQ(Classify(U'〇'), CharClass::kHan);
  EXPECT_EQ(Classify(U' '), CharClass::kWhitespace);
  EXPECT_EQ(Classify(U'　'), CharClass::kWhitespace);
  EXPECT_EQ(Classify(U'z'), CharClass::kAsciiAlnum);
  EXPECT_EQ(Classify(U'7'), CharClass::kAsciiAlnum);
  EXPECT_EQ(Classify(U'，'), CharClass::kOther);
  EXPECT_EQ(Classify(U'é'), CharClass::kOther);
}

}  // namespace
}  // namespace ragmt::utf8
