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

// HTTP clients: a chat-completions backend and the remote dictionary MT
// endpoint. Transport failures, 429 and 5xx are retried with exponential
// backoff; any other non-2xx status fails immediately.

#ifndef RAGMT_HTTP_BACKEND_H_
#define RAGMT_HTTP_BACKEND_H_

#include <chrono>
#include <cstddef>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>

#include "ragmt/llm_client.h"
#include "ragmt/response_cache.h"

namespace ragmt {

struct HttpEndpoint {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  std::string token;  // empty: no auth header
  std::chrono::seconds timeout{60};
};

// POSTs {"model", "messages": [system, user], "temperature"} and reads
// choices[0].message.content (or a top-level "text" string).
class HttpBackend : public ChatBackend {
 public:
  HttpBackend(HttpEndpoint endpoint, RetryPolicy retry,
              std::ptrdiff_t max_in_flight = 4);

  std::string id() const override { return "http:" + endpoint_.base_url; }

 protected:
  std::string DoComplete(const ChatRequest& request) override;

 private:
  HttpEndpoint endpoint_;
  RetryPolicy retry_;
  std::counting_semaphore<> in_flight_;
};

// Remote dictionary MT: POST of UTF-8 plain text, plain-text reply returned
// verbatim. Replies are cached under a ChatRequest whose model_id names the
// endpoint.
class ExternalDictionaryClient {
 public:
  ExternalDictionaryClient(HttpEndpoint endpoint, RetryPolicy retry,
                           ResponseCache* cache = nullptr);

  std::string Translate(std::string_view text);

  ChatRequest CacheRequest(std::string_view text) const;
  std::size_t network_calls() const { return network_calls_.load(); }

 private:
  HttpEndpoint endpoint_;
  RetryPolicy retry_;
  ResponseCache* cache_;
  std::atomic<std::size_t> network_calls_{0};
};

}  // namespace ragmt

#endif  // RAGMT_HTTP_BACKEND_H_
