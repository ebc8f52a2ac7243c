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

// Backend-neutral single-shot chat completion.
//
// Every request has a canonical JSON serialization whose SHA-256 is the
// cache key. Backends are shareable across threads.

#ifndef RAGMT_LLM_CLIENT_H_
#define RAGMT_LLM_CLIENT_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ragmt {

struct ChatRequest {
  std::string model_id;
  std::string system_text;
  std::string user_text;
  double temperature = 0.0;  // [0, 2]
  std::optional<std::size_t> max_output_chars;

  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

// Fields in declaration order, no insignificant whitespace, raw UTF-8.
// Throws std::invalid_argument for an out-of-range temperature or a zero
// max_output_chars.
nlohmann::ordered_json ToJson(const ChatRequest& request);
std::string CanonicalSerialization(const ChatRequest& request);
ChatRequest ChatRequestFromJson(const nlohmann::json& j);

std::string Sha256Hex(std::string_view data);

// Lowercase hex SHA-256 of CanonicalSerialization(request).
std::string CacheKey(const ChatRequest& request);

struct ChatResponse {
  std::string text;
  std::string backend_id;
  bool from_cache = false;
  double latency_ms = 0.0;
};

class BackendError : public std::runtime_error {
 public:
  // status is the last HTTP status, or 0 when no response was received.
  BackendError(const std::string& what, bool retryable, int status = 0)
      : std::runtime_error(what), retryable_(retryable), status_(status) {}
  bool retryable() const { return retryable_; }
  int status() const { return status_; }

 private:
  bool retryable_;
  int status_;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  virtual std::string id() const = 0;

  // Number of Complete() calls so far, successful or not.
  std::size_t invocations() const { return invocations_.load(); }

  // Raw backend output. Throws BackendError.
  std::string Complete(const ChatRequest& request) {
    ++invocations_;
    return DoComplete(request);
  }

 protected:
  virtual std::string DoComplete(const ChatRequest& request) = 0;

 private:
  std::atomic<std::size_t> invocations_{0};
};

// Exact-match rule table on user_text; unmatched requests echo user_text.
class MockBackend : public ChatBackend {
 public:
  MockBackend() = default;
  explicit MockBackend(std::map<std::string, std::string> rules)
      : rules_(std::move(rules)) {}

  std::string id() const override { return "mock"; }

 protected:
  std::string DoComplete(const ChatRequest& request) override;

 private:
  std::map<std::string, std::string> rules_;
};

class ResponseCache;

// Serves responses exclusively from a cache; a miss is a terminal error
// naming the key.
class ReplayBackend : public ChatBackend {
 public:
  explicit ReplayBackend(const ResponseCache& cache) : cache_(cache) {}

  std::string id() const override { return "replay"; }

 protected:
  std::string DoComplete(const ChatRequest& request) override;

 private:
  const ResponseCache& cache_;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{1000};
  double factor = 2.0;
  // Replaceable for tests.
  std::function<void(std::chrono::milliseconds)> sleep;

  // Delay before attempt k+1, for k = 1 .. max_attempts-1.
  std::vector<std::chrono::milliseconds> Delays() const;
};

// Runs fn until it succeeds, throws a non-retryable BackendError, or
// max_attempts is exhausted. The final failure is rethrown as terminal.
std::string WithRetries(const RetryPolicy& policy,
                        const std::function<std::string()>& fn);

// One backend round trip. Strips surrounding whitespace; an empty result is
// a terminal BackendError.
ChatResponse Send(ChatBackend& backend, const ChatRequest& request);

// Cache hit: returns the stored text with from_cache set and does not touch
// the backend. Miss: Send(), then persist the entry before returning.
// cache may be null, which degrades to Send().
ChatResponse SendCached(ChatBackend& backend, ResponseCache* cache,
                        const ChatRequest& request);

}  // namespace ragmt

#endif  // RAGMT_LLM_CLIENT_H_
