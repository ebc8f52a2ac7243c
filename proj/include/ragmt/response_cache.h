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

#ifndef RAGMT_RESPONSE_CACHE_H_
#define RAGMT_RESPONSE_CACHE_H_

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "ragmt/llm_client.h"
#include "ragmt/timeutil.h"

namespace ragmt {

struct CacheEntry {
  std::string key;
  ChatRequest request;
  std::string response_text;
  std::string created_at;  // RFC 3339
};

// One JSON document per entry at <dir>/<key>.json, written through a
// temporary file and renamed into place. Reads are lock-free; concurrent
// writers of one key leave exactly one complete file.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir, Clock clock = DefaultClock());

  const std::filesystem::path& dir() const { return dir_; }

  // Entries that fail to parse or whose key does not match their request
  // are logged, counted and reported as misses.
  std::optional<CacheEntry> Get(const std::string& key) const;
  std::optional<CacheEntry> Get(const ChatRequest& request) const {
    return Get(CacheKey(request));
  }

  // Creates the directory on first use. Throws std::filesystem errors.
  CacheEntry Put(const ChatRequest& request, const std::string& response_text);

  std::size_t corrupt_reads() const { return corrupt_reads_.load(); }

 private:
  std::filesystem::path dir_;
  Clock clock_;
  mutable std::atomic<std::size_t> corrupt_reads_{0};
};

}  // namespace ragmt

#endif  // RAGMT_RESPONSE_CACHE_H_
