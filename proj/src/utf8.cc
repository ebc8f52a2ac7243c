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

#include <string>

namespace ragmt::utf8 {
namespace {

// Decodes one scalar starting at bytes[pos]. Returns the number of bytes
// consumed, or 0 if the sequence is malformed.
std::size_t DecodeOne(std::string_view bytes, std::size_t pos, char32_t* out) {
  const auto b0 = static_cast<unsigned char>(bytes[pos]);
  if (b0 < 0x80) {
    *out = b0;
    return 1;
  }
  std::size_t len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    return 0;
  }
  if (pos + len > bytes.size()) return 0;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(bytes[pos + i]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  *out = cp;
  return len;
}

}  // namespace

Text::Text(std::string_view bytes) : bytes_(bytes) {
  code_points_.reserve(bytes.size());
  offsets_.reserve(bytes.size() + 1);
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    char32_t cp;
    const std::size_t n = DecodeOne(bytes, pos, &cp);
    if (n == 0) {
      throw DecodeError("invalid UTF-8 at byte " + std::to_string(pos), pos);
    }
    code_points_.push_back(cp);
    offsets_.push_back(pos);
    pos += n;
  }
  offsets_.push_back(pos);
}

std::string_view Text::Slice(std::size_t begin, std::size_t end) const {
  return bytes_.substr(offsets_[begin], offsets_[end] - offsets_[begin]);
}

bool IsValid(std::string_view bytes) {
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    char32_t cp;
    const std::size_t n = DecodeOne(bytes, pos, &cp);
    if (n == 0) return false;
    pos += n;
  }
  return true;
}

std::size_t Length(std::string_view bytes) { return Text(bytes).size(); }

std::vector<char32_t> Decode(std::string_view bytes) {
  Text text(bytes);
  std::vector<char32_t> out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) out[i] = text[i];
  return out;
}

void Append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string Encode(char32_t cp) {
  std::string out;
  Append(out, cp);
  return out;
}

// Unicode White_Space property.
bool IsWhitespace(char32_t cp) {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 ||
         cp == 0xA0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000;
}

bool IsHan(char32_t cp) {
  return cp == 0x3007 ||                      // ideographic zero
         (cp >= 0x3400 && cp <= 0x4DBF) ||    // extension A
         (cp >= 0x4E00 && cp <= 0x9FFF) ||    // unified ideographs
         (cp >= 0xF900 && cp <= 0xFAFF) ||    // compatibility ideographs
         (cp >= 0x20000 && cp <= 0x2FA1F) ||  // extensions B-F, supplement
         (cp >= 0x30000 && cp <= 0x323AF);    // extensions G-H
}

CharClass Classify(char32_t cp) {
  if (IsHan(cp)) return CharClass::kHan;
  if (IsWhitespace(cp)) return CharClass::kWhitespace;
  if ((cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
      (cp >= 'a' && cp <= 'z')) {
    return CharClass::kAsciiAlnum;
  }
  return CharClass::kOther;
}

}  // namespace ragmt::utf8
