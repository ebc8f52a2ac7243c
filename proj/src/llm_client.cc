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

#include "ragmt/llm_client.h"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <thread>

#include "ragmt/response_cache.h"
#include "ragmt/utf8.h"

namespace ragmt {
namespace {

std::string_view StripWhitespace(std::string_view s) {
  const utf8::Text text(s);
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && utf8::IsWhitespace(text[b])) ++b;
  while (e > b && utf8::IsWhitespace(text[e - 1])) --e;
  return text.Slice(b, e);
}

}  // namespace

nlohmann::ordered_json ToJson(const ChatRequest& request) {
  if (!(request.temperature >= 0.0 && request.temperature <= 2.0)) {
    throw std::invalid_argument("temperature must be in [0, 2]");
  }
  if (request.max_output_chars && *request.max_output_chars == 0) {
    throw std::invalid_argument("max_output_chars must be positive");
  }
  nlohmann::ordered_json j;
  j["model_id"] = request.model_id;
  j["system_text"] = request.system_text;
  j["user_text"] = request.user_text;
  j["temperature"] = request.temperature;
  if (request.max_output_chars) {
    j["max_output_chars"] = *request.max_output_chars;
  } else {
    j["max_output_chars"] = nullptr;
  }
  return j;
}

std::string CanonicalSerialization(const ChatRequest& request) {
  return ToJson(request).dump(-1, ' ', false,
                              nlohmann::json::error_handler_t::strict);
}

ChatRequest ChatRequestFromJson(const nlohmann::json& j) {
  ChatRequest r;
  r.model_id = j.at("model_id").get<std::string>();
  r.system_text = j.at("system_text").get<std::string>();
  r.user_text = j.at("user_text").get<std::string>();
  r.temperature = j.at("temperature").get<double>();
  if (j.contains("max_output_chars") && !j.at("max_output_chars").is_null()) {
    r.max_output_chars = j.at("max_output_chars").get<std::size_t>();
  }
  return r;
}

std::string Sha256Hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string CacheKey(const ChatRequest& request) {
  return Sha256Hex(CanonicalSerialization(request));
}

std::string MockBackend::DoComplete(const ChatRequest& request) {
  auto it = rules_.find(request.user_text);
  return it == rules_.end() ? request.user_text : it->second;
}

std::string ReplayBackend::DoComplete(const ChatRequest& request) {
  const std::string key = CacheKey(request);
  if (auto entry = cache_.Get(key)) return entry->response_text;
  throw BackendError("replay cache miss for key " + key, false);
}

std::vector<std::chrono::milliseconds> RetryPolicy::Delays() const {
  std::vector<std::chrono::milliseconds> delays;
  double delay = static_cast<double>(base_delay.count());
  for (int attempt = 1; attempt < max_attempts; ++attempt) {
    delays.emplace_back(static_cast<long long>(std::llround(delay)));
    delay *= factor;
  }
  return delays;
}

std::string WithRetries(const RetryPolicy& policy,
                        const std::function<std::string()>& fn) {
  const auto delays = policy.Delays();
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const BackendError& e) {
      if (!e.retryable()) throw;
      if (attempt >= policy.max_attempts) {
        throw BackendError(std::string(e.what()) + " (gave up after " +
                               std::to_string(attempt) + " attempts)",
                           false, e.status());
      }
      const auto delay = delays[static_cast<std::size_t>(attempt - 1)];
      if (policy.sleep) {
        policy.sleep(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
    }
  }
}

ChatResponse Send(ChatBackend& backend, const ChatRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  const std::string raw = backend.Complete(request);
  const auto elapsed = std::chrono::steady_clock::now() - start;

  if (!utf8::IsValid(raw)) {
    throw BackendError("backend " + backend.id() + " returned invalid UTF-8",
                       false);
  }
  ChatResponse response;
  response.text = std::string(StripWhitespace(raw));
  if (response.text.empty()) {
    throw BackendError("empty response from backend " + backend.id(), false);
  }
  response.backend_id = backend.id();
  response.latency_ms =
      std::chrono::duration<double, std::milli>(elapsed).count();
  return response;
}

ChatResponse SendCached(ChatBackend& backend, ResponseCache* cache,
                        const ChatRequest& request) {
  if (cache == nullptr) return Send(backend, request);
  if (auto entry = cache->Get(request)) {
    return ChatResponse{entry->response_text, backend.id(), true, 0.0};
  }
  ChatResponse response = Send(backend, request);
  cache->Put(request, response.text);
  return response;
}

}  // namespace ragmt
