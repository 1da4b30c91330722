// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/backend/http_transport.hpp"

#include <cstdlib>
#include <semaphore>

#include <httplib.h>

namespace relay::backend {

using nlohmann::json;

json build_chat_body(const GenerationRequest& request) {
  json body;
  body["model"] = request.model;
  body["messages"] = json::array({json{{"role", "user"}, {"content", request.prompt}}});
  body["temperature"] = request.decoding.temperature;
  if (request.decoding.top_p) body["top_p"] = *request.decoding.top_p;
  body["max_tokens"] = request.decoding.max_new_tokens;
  return body;
}

GenerationResponse parse_chat_response(const std::string& body) {
  json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw TransportError("response body is not JSON: " + body.substr(0, 200),
                         /*transient=*/false);
  try {
    GenerationResponse out;
    out.raw = body;
    out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (j.contains("usage")) {
      const auto& usage = j["usage"];
      if (usage.contains("prompt_tokens"))
        out.prompt_tokens = usage["prompt_tokens"].get<long>();
      if (usage.contains("completion_tokens"))
        out.completion_tokens = usage["completion_tokens"].get<long>();
    }
    return out;
  } catch (const json::exception& e) {
    throw TransportError(std::string("unexpected chat response shape: ") + e.what(),
                         /*transient=*/false);
  }
}

struct HttpChatTransport::Impl {
  HttpEndpointConfig config;
  std::string bearer;
  std::counting_semaphore<> in_flight;

  explicit Impl(HttpEndpointConfig cfg)
      : config(std::move(cfg)),
        in_flight(config.max_in_flight > 0 ? config.max_in_flight : 1) {
    if (!config.api_key_env.empty()) {
      const char* token = std::getenv(config.api_key_env.c_str());
      if (!token)
        throw Error(ErrorKind::validation,
                    "environment variable '" + config.api_key_env +
                        "' named in the endpoint config is not set");
      bearer = token;
    }
  }
};

HttpChatTransport::HttpChatTransport(HttpEndpointConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

HttpChatTransport::~HttpChatTransport() = default;

GenerationResponse HttpChatTransport::send(const GenerationRequest& request) {
  impl_->in_flight.acquire();
  struct Release {
    std::counting_semaphore<>& sem;
    ~Release() { sem.release(); }
  } release{impl_->in_flight};

  // A client per call keeps this trivially thread-safe; chain latency is
  // dominated by generation, not connection setup.
  httplib::Client client(impl_->config.base_url);
  client.set_connection_timeout(impl_->config.timeout_s, 0);
  client.set_read_timeout(impl_->config.timeout_s, 0);
  client.set_write_timeout(impl_->config.timeout_s, 0);
  httplib::Headers headers;
  if (!impl_->bearer.empty())
    headers.emplace("Authorization", "Bearer " + impl_->bearer);

  const std::string body = build_chat_body(request).dump();
  auto result = client.Post(impl_->config.path, headers, body, "application/json");
  if (!result)
    throw TransportError("request to " + impl_->config.base_url +
                             " failed: " + httplib::to_string(result.error()),
                         /*transient=*/true);
  const int status = result->status;
  if (status == 200) return parse_chat_response(result->body);

  const bool transient = status == 429 || status == 408 || status >= 500;
  throw TransportError("endpoint " + impl_->config.base_url + " returned HTTP " +
                           std::to_string(status) + ": " +
                           result->body.substr(0, 200),
                       transient, status);
}

}  // namespace relay::backend
