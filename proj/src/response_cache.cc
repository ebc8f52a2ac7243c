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

#include "ragmt/response_cache.h"

#include <spdlog/spdlog.h>

#include <fstream>
#include <random>
#include <sstream>
#include <system_error>
#include <thread>

namespace ragmt {
namespace fs = std::filesystem;

namespace {

std::string TempSuffix() {
  thread_local std::mt19937_64 rng(
      std::random_device{}() ^
      std::hash<std::thread::id>{}(std::this_thread::get_id()));
  std::ostringstream os;
  os << std::hex << rng();
  return os.str();
}

}  // namespace

ResponseCache::ResponseCache(fs::path dir, Clock clock)
    : dir_(std::move(dir)), clock_(std::move(clock)) {}

std::optional<CacheEntry> ResponseCache::Get(const std::string& key) const {
  const fs::path path = dir_ / (key + ".json");
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;

  try {
    const nlohmann::json j = nlohmann::json::parse(is);
    CacheEntry entry;
    entry.key = j.at("key").get<std::string>();
    entry.request = ChatRequestFromJson(j.at("request"));
    entry.response_text = j.at("response_text").get<std::string>();
    entry.created_at = j.at("created_at").get<std::string>();
    const std::string recomputed = CacheKey(entry.request);
    if (entry.key != key || recomputed != key) {
      throw std::runtime_error("digest mismatch (stored " + entry.key +
                               ", recomputed " + recomputed + ")");
    }
    return entry;
  } catch (const std::exception& e) {
    ++corrupt_reads_;
    spdlog::warn("ignoring corrupt cache entry {}: {}", path.string(),
                 e.what());
    return std::nullopt;
  }
}

CacheEntry ResponseCache::Put(const ChatRequest& request,
                              const std::string& response_text) {
  CacheEntry entry{CacheKey(request), request, response_text,
                   FormatRfc3339(clock_())};

  nlohmann::ordered_json j;
  j["key"] = entry.key;
  j["request"] = ToJson(request);
  j["response_text"] = entry.response_text;
  j["created_at"] = entry.created_at;

  fs::create_directories(dir_);
  const fs::path final_path = dir_ / (entry.key + ".json");
  const fs::path tmp_path =
      dir_ / ("." + entry.key + "." + TempSuffix() + ".tmp");
  {
    std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
    if (!os) {
      throw fs::filesystem_error(
          "cannot write cache entry", tmp_path,
          std::make_error_code(std::errc::permission_denied));
    }
    os << j.dump(2) << '\n';
    os.flush();
    if (!os) {
      throw fs::filesystem_error("short write to cache entry", tmp_path,
                                 std::make_error_code(std::errc::io_error));
    }
  }
  std::error_code ec;
  fs::rename(tmp_path, final_path, ec);
  if (ec) {
    fs::remove(tmp_path);
    throw fs::filesystem_error("cannot publish cache entry", final_path, ec);
  }
  return entry;
}

}  // namespace ragmt
