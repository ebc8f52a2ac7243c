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

#ifndef RAGMT_UTF8_H_
#define RAGMT_UTF8_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ragmt::utf8 {

class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// A UTF-8 string viewed as a sequence of Unicode scalar values. Indices
// passed to and returned from this class are scalar indices, never bytes.
// The underlying bytes are borrowed; the source must outlive the view.
class Text {
 public:
  // Throws DecodeError on malformed input, overlong forms and surrogates.
  explicit Text(std::string_view bytes);

  std::size_t size() const { return code_points_.size(); }
  bool empty() const { return code_points_.empty(); }
  char32_t operator[](std::size_t i) const { return code_points_[i]; }

  // Bytes of scalars [begin, end).
  std::string_view Slice(std::size_t begin, std::size_t end) const;
  std::string_view bytes() const { return bytes_; }

 private:
  std::string_view bytes_;
  std::vector<char32_t> code_points_;
  std::vector<std::size_t> offsets_;  // size() + 1 entries
};

bool IsValid(std::string_view bytes);

// Number of scalar values; throws DecodeError on invalid input.
std::size_t Length(std::string_view bytes);

std::vector<char32_t> Decode(std::string_view bytes);
void Append(std::string& out, char32_t cp);
std::string Encode(char32_t cp);

bool IsWhitespace(char32_t cp);
bool IsHan(char32_t cp);

// Coarse classes used to split text into Han material and atomic
// non-Han runs.
enum class CharClass { kHan, kWhitespace, kAsciiAlnum, kOther };

CharClass Classify(char32_t cp);

}  // namespace ragmt::utf8

#endif  // RAGMT_UTF8_H_
