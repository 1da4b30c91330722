// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relay/backend/noise.hpp"
#include "relay/backend/transport.hpp"
#include "relay/chain/language.hpp"
#include "relay/chain/plan.hpp"

namespace relay::backend {

struct HopResult {
  std::string text;
  std::string raw;
  std::optional<long> completion_tokens;
};

// Executes one hop of a plan: translate (or rephrase) `input` according to
// the hop's languages and model.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual HopResult execute(const chain::Hop& hop, chain::PromptVariant variant,
                            std::string_view input) = 0;
  virtual bool deterministic() const = 0;
};

// Renders the prompt for the hop, builds the request from the hop model's
// decoding params and sends it through a chat transport.
class ChatBackend : public Backend {
 public:
  ChatBackend(std::shared_ptr<ChatTransport> transport, std::string remote_model,
              const chain::LanguageRegistry* registry);
  HopResult execute(const chain::Hop& hop, chain::PromptVariant variant,
                    std::string_view input) override;
  bool deterministic() const override { return transport_->deterministic(); }

 private:
  std::shared_ptr<ChatTransport> transport_;
  std::string remote_model_;
  const chain::LanguageRegistry* registry_;
};

class NoiseBackend : public Backend {
 public:
  explicit NoiseBackend(NoiseChannelSpec spec);
  HopResult execute(const chain::Hop& hop, chain::PromptVariant variant,
                    std::string_view input) override;
  bool deterministic() const override { return true; }

 private:
  NoiseChannelSpec spec_;
};

struct HopOptions {
  // boilerplate prefixes ("Here is the translation:") stripped from outputs;
  // off by default, every strip is flagged in the record
  std::vector<std::string> strip_prefixes;
};

struct HopOutput {
  std::string text;  // whitespace-stripped model output
  std::string raw;
  std::size_t whitespace_tokens = 0;
  std::optional<long> backend_tokens;
  bool language_flagged = false;  // output script does not look like to_lang
  bool prefix_stripped = false;
};

// Crude script check used only to flag (never correct) outputs whose script
// family disagrees with the expected target language.
bool language_mismatch(std::string_view text, chain::Script expected);

// Runs one hop and applies output hygiene. Throws EmptyOutputError when the
// stripped output is empty (the document's chain aborts, the run survives)
// and TransportError for permanent transport failures.
HopOutput execute_hop(const chain::Hop& hop, chain::PromptVariant variant,
                      std::string_view input, Backend& backend,
                      const chain::LanguageRegistry& registry,
                      const HopOptions& options = {});

struct HopRecord {
  std::string from_lang;
  std::string to_lang;
  std::string model_id;
  std::string output;
  std::string raw;
  std::size_t whitespace_tokens = 0;
  std::optional<long> backend_tokens;
  bool language_flagged = false;
  bool prefix_stripped = false;
};

struct IterationRecord {
  int t = 0;
  std::vector<HopRecord> hops;
  std::string final_text;
  double wall_ms = 0.0;
};

using BackendTable =
    std::function<Backend&(const chain::ModelSpec&)>;  // endpoint_ref -> backend

// Applies the plan's hops in order, threading each hop's output into the
// next. The input text is never mutated; errors carry the 1-based index of
// the failing hop.
IterationRecord run_iteration(const chain::HopPlan& plan, int t,
                              std::string_view state_text, const BackendTable& backends,
                              chain::PromptVariant variant,
                              const chain::LanguageRegistry& registry,
                              const HopOptions& options = {},
                              const std::function<double()>& now_ms = {});

}  // namespace relay::backend
