// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "relay/chain/types.hpp"
#include "relay/core/error.hpp"

namespace relay::backend {

struct GenerationRequest {
  std::string model;  // backend-native model name
  std::string prompt;
  chain::DecodingParams decoding;
};

struct GenerationResponse {
  std::string text;  // first choice's message content
  std::string raw;   // raw response body, kept for audit
  std::optional<long> prompt_tokens;
  std::optional<long> completion_tokens;
};

class TransportError : public Error {
 public:
  TransportError(std::string message, bool transient, int http_status = 0)
      : Error(ErrorKind::transport, std::move(message)),
        transient_(transient),
        http_status_(http_status) {}
  bool transient() const noexcept { return transient_; }
  int http_status() const noexcept { return http_status_; }

 private:
  bool transient_;
  int http_status_;
};

// A chat-completion endpoint reduced to one call.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual GenerationResponse send(const GenerationRequest& request) = 0;
  // true when replies are a pure function of the request sequence
  virtual bool deterministic() const { return false; }
};

// Retry schedule for transient failures: one initial attempt plus one
// retry per backoff entry, each delay jittered by +/- `jitter`.
struct RetryPolicy {
  std::vector<std::chrono::milliseconds> backoff = {
      std::chrono::milliseconds(1000), std::chrono::milliseconds(4000),
      std::chrono::milliseconds(16000)};
  double jitter = 0.25;
  // injectable for tests; defaults to std::this_thread::sleep_for
  std::function<void(std::chrono::milliseconds)> sleep;
};

class RetryingTransport : public ChatTransport {
 public:
  RetryingTransport(std::shared_ptr<ChatTransport> inner, RetryPolicy policy);
  GenerationResponse send(const GenerationRequest& request) override;
  bool deterministic() const override { return inner_->deterministic(); }

 private:
  std::shared_ptr<ChatTransport> inner_;
  RetryPolicy policy_;
};

// Test and orchestration double: replies are served from a fixed queue (or a
// handler), and every request is recorded.
class ScriptedTransport : public ChatTransport {
 public:
  explicit ScriptedTransport(std::vector<std::string> replies = {});
  explicit ScriptedTransport(
      std::function<std::string(const GenerationRequest&, std::size_t index)> handler);

  GenerationResponse send(const GenerationRequest& request) override;
  bool deterministic() const override { return true; }

  const std::vector<GenerationRequest>& requests() const { return requests_; }
  std::size_t calls() const { return requests_.size(); }

 private:
  std::mutex mu_;
  std::deque<std::string> replies_;
  std::function<std::string(const GenerationRequest&, std::size_t)> handler_;
  std::vector<GenerationRequest> requests_;
};

}  // namespace relay::backend
