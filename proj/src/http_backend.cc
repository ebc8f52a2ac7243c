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

#include "ragmt/http_backend.h"

#include <httplib.h>

namespace ragmt {
namespace {

bool IsRetryableStatus(int status) { return status == 429 || status >= 500; }

// One POST. Throws BackendError, retryable for transport failures, 429 and
// 5xx.
std::string PostOnce(const HttpEndpoint& endpoint, const std::string& body,
                     const char* content_type) {
  httplib::Client client(endpoint.base_url);
  client.set_connection_timeout(endpoint.timeout);
  client.set_read_timeout(endpoint.timeout);
  client.set_write_timeout(endpoint.timeout);

  httplib::Headers headers;
  if (!endpoint.token.empty()) {
    headers.emplace(endpoint.auth_header, endpoint.auth_prefix + endpoint.token);
  }
  auto result = client.Post(endpoint.path, headers, body, content_type);
  if (!result) {
    throw BackendError("POST " + endpoint.base_url + endpoint.path +
                           " failed: " + httplib::to_string(result.error()),
                       true);
  }
  const int status = result->status;
  if (status < 200 || status >= 300) {
    throw BackendError("POST " + endpoint.base_url + endpoint.path +
                           " returned HTTP " + std::to_string(status),
                       IsRetryableStatus(status), status);
  }
  return result->body;
}

std::string ExtractContent(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw BackendError(std::string("malformed chat response: ") + e.what(),
                       false, 200);
  }
  if (j.contains("choices") && j["choices"].is_array() &&
      !j["choices"].empty()) {
    const auto& choice = j["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content") &&
        choice["message"]["content"].is_string()) {
      return choice["message"]["content"].get<std::string>();
    }
  }
  if (j.contains("text") && j["text"].is_string()) {
    return j["text"].get<std::string>();
  }
  throw BackendError("chat response has no message content", false, 200);
}

}  // namespace

HttpBackend::HttpBackend(HttpEndpoint endpoint, RetryPolicy retry,
                         std::ptrdiff_t max_in_flight)
    : endpoint_(std::move(endpoint)),
      retry_(std::move(retry)),
      in_flight_(std::max<std::ptrdiff_t>(max_in_flight, 1)) {}

std::string HttpBackend::DoComplete(const ChatRequest& request) {
  nlohmann::ordered_json body;
  body["model"] = request.model_id;
  body["messages"] = nlohmann::ordered_json::array(
      {{{"role", "system"}, {"content", request.system_text}},
       {{"role", "user"}, {"content", request.user_text}}});
  body["temperature"] = request.temperature;
  const std::string payload = body.dump();

  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{in_flight_};

  return WithRetries(retry_, [&] {
    return ExtractContent(PostOnce(endpoint_, payload, "application/json"));
  });
}

ExternalDictionaryClient::ExternalDictionaryClient(HttpEndpoint endpoint,
                                                   RetryPolicy retry,
                                                   ResponseCache* cache)
    : endpoint_(std::move(endpoint)), retry_(std::move(retry)), cache_(cache) {}

ChatRequest ExternalDictionaryClient::CacheRequest(std::string_view text) const {
  ChatRequest r;
  r.model_id = "external-dictionary:" + endpoint_.base_url + endpoint_.path;
  r.user_text = std::string(text);
  return r;
}

std::string ExternalDictionaryClient::Translate(std::string_view text) {
  const ChatRequest request = CacheRequest(text);
  if (cache_ != nullptr) {
    if (auto entry = cache_->Get(request)) return entry->response_text;
  }
  const std::string payload(text);
  std::string translation = WithRetries(retry_, [&] {
    ++network_calls_;
    return PostOnce(endpoint_, payload, "text/plain; charset=utf-8");
  });
  if (cache_ != nullptr) cache_->Put(request, translation);
  return translation;
}

}  // namespace ragmt
