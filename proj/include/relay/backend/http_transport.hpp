// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "relay/backend/transport.hpp"

namespace relay::backend {

struct HttpEndpointConfig {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;        // remote model identifier
  std::string api_key_env;  // env var holding the bearer token; empty = none
  int timeout_s = 120;
  int max_in_flight = 4;  // concurrent request cap for this endpoint
};

// Request body for the generic chat-completion wire contract:
//   {model, messages: [{role: "user", content: prompt}],
//    temperature, top_p?, max_tokens}
// top_p is omitted entirely when the decoding params leave it unset.
nlohmann::json build_chat_body(const GenerationRequest& request);

// Extracts choices[0].message.content and optional usage counts; throws a
// TransportError(parse-flavored, permanent) when the shape is wrong.
GenerationResponse parse_chat_response(const std::string& body);

// Blocking client over cpp-httplib. Safe for concurrent use; an internal
// counting semaphore enforces max_in_flight.
class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(HttpEndpointConfig config);
  ~HttpChatTransport() override;

  GenerationResponse send(const GenerationRequest& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace relay::backend
