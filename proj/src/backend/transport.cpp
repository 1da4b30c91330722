// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/backend/transport.hpp"

#include <random>
#include <thread>

namespace relay::backend {

RetryingTransport::RetryingTransport(std::shared_ptr<ChatTransport> inner,
                                     RetryPolicy policy)
    : inner_(std::move(inner)), policy_(std::move(policy)) {
  if (!policy_.sleep) {
    policy_.sleep = [](std::chrono::milliseconds d) {
      std::this_thread::sleep_for(d);
    };
  }
}

GenerationResponse RetryingTransport::send(const GenerationRequest& request) {
  // Jitter does not need to be reproducible: it only exists to spread live
  // traffic, and deterministic transports never fail.
  thread_local std::mt19937_64 jitter_rng{std::random_device{}()};
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      return inner_->send(request);
    } catch (const TransportError& e) {
      if (!e.transient() || attempt >= policy_.backoff.size()) throw;
      auto delay = policy_.backoff[attempt];
      if (policy_.jitter > 0.0) {
        std::uniform_real_distribution<double> dist(1.0 - policy_.jitter,
                                                    1.0 + policy_.jitter);
        delay = std::chrono::milliseconds(static_cast<long long>(
            static_cast<double>(delay.count()) * dist(jitter_rng)));
      }
      policy_.sleep(delay);
    }
  }
}

ScriptedTransport::ScriptedTransport(std::vector<std::string> replies)
    : replies_(replies.begin(), replies.end()) {}

ScriptedTransport::ScriptedTransport(
    std::function<std::string(const GenerationRequest&, std::size_t)> handler)
    : handler_(std::move(handler)) {}

GenerationResponse ScriptedTransport::send(const GenerationRequest& request) {
  std::lock_guard<std::mutex> lock(mu_);
  const std::size_t index = requests_.size();
  requests_.push_back(request);
  GenerationResponse response;
  if (handler_) {
    response.text = handler_(request, index);
  } else {
    if (replies_.empty())
      throw TransportError("scripted transport exhausted after " +
                               std::to_string(index) + " calls",
                           /*transient=*/false);
    response.text = std::move(replies_.front());
    replies_.pop_front();
  }
  response.raw = response.text;
  return response;
}

}  // namespace relay::backend
