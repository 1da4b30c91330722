// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/backend/backend.hpp"

#include "relay/backend/prompt.hpp"
#include "relay/core/strings.hpp"

namespace relay::backend {

ChatBackend::ChatBackend(std::shared_ptr<ChatTransport> transport,
                         std::string remote_model,
                         const chain::LanguageRegistry* registry)
    : transport_(std::move(transport)),
      remote_model_(std::move(remote_model)),
      registry_(registry) {}

HopResult ChatBackend::execute(const chain::Hop& hop, chain::PromptVariant variant,
                               std::string_view input) {
  const chain::Language* source = nullptr;
  const chain::Language* target = nullptr;
  if (variant != chain::PromptVariant::rephrase) {
    source = &registry_->get(hop.from_lang);
    target = &registry_->get(hop.to_lang);
  }
  GenerationRequest request;
  request.model = remote_model_;
  request.prompt = render_prompt(variant, source, target, input);
  request.decoding = hop.model.decoding;
  GenerationResponse response = transport_->send(request);
  return {std::move(response.text), std::move(response.raw),
          response.completion_tokens};
}

NoiseBackend::NoiseBackend(NoiseChannelSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
}

HopResult NoiseBackend::execute(const chain::Hop&, chain::PromptVariant,
                                std::string_view input) {
  std::string out = apply_noise(spec_, input);
  return {out, out, std::nullopt};
}

bool language_mismatch(std::string_view text, chain::Script expected) {
  std::size_t latin = 0;
  std::size_t other = 0;
  for (char32_t cp : decode_utf8(text)) {
    const bool latin_letter =
        (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z') ||
        (cp >= 0x00C0 && cp <= 0x024F) ||   // Latin-1 supplement + extended
        (cp >= 0x1E00 && cp <= 0x1EFF);     // Latin extended additional (Vietnamese)
    const bool other_letter =
        (cp >= 0x0E00 && cp <= 0x0E7F) ||   // Thai
        (cp >= 0x4E00 && cp <= 0x9FFF) ||   // CJK unified
        (cp >= 0x3040 && cp <= 0x30FF) ||   // kana
        (cp >= 0x0400 && cp <= 0x04FF) ||   // Cyrillic
        (cp >= 0x0600 && cp <= 0x06FF) ||   // Arabic
        (cp >= 0x0900 && cp <= 0x097F);     // Devanagari
    if (latin_letter) ++latin;
    if (other_letter) ++other;
  }
  const std::size_t letters = latin + other;
  if (letters < 10) return false;  // too short to call
  const double latin_fraction =
      static_cast<double>(latin) / static_cast<double>(letters);
  if (expected == chain::Script::latin) return latin_fraction < 0.5;
  return latin_fraction > 0.7;
}

HopOutput execute_hop(const chain::Hop& hop, chain::PromptVariant variant,
                      std::string_view input, Backend& backend,
                      const chain::LanguageRegistry& registry,
                      const HopOptions& options) {
  if (trim(input).empty())
    throw Error(ErrorKind::contract, "hop input text must be non-empty");

  HopResult result = backend.execute(hop, variant, input);

  HopOutput out;
  out.raw = std::move(result.raw);
  out.backend_tokens = result.completion_tokens;
  out.text = trim(result.text);

  for (const auto& prefix : options.strip_prefixes) {
    if (out.text.size() > prefix.size() && out.text.rfind(prefix, 0) == 0) {
      out.text = trim(std::string_view(out.text).substr(prefix.size()));
      out.prefix_stripped = true;
      break;
    }
  }

  if (out.text.empty())
    throw EmptyOutputError("model returned empty output for hop " +
                           hop.from_lang + "->" + hop.to_lang);

  out.whitespace_tokens = count_words(out.text);
  out.language_flagged =
      language_mismatch(out.text, registry.get(hop.to_lang).script);
  return out;
}

IterationRecord run_iteration(const chain::HopPlan& plan, int t,
                              std::string_view state_text,
                              const BackendTable& backends,
                              chain::PromptVariant variant,
                              const chain::LanguageRegistry& registry,
                              const HopOptions& options,
                              const std::function<double()>& now_ms) {
  IterationRecord record;
  record.t = t;
  const double start = now_ms ? now_ms() : 0.0;

  std::string state(state_text);
  for (std::size_t i = 0; i < plan.hops.size(); ++i) {
    const chain::Hop& hop = plan.hops[i];
    const auto describe = [&] {
      return "hop " + std::to_string(i + 1) + " (" + hop.from_lang + "->" +
             hop.to_lang + " via " + hop.model.id + ")";
    };
    try {
      HopOutput out =
          execute_hop(hop, variant, state, backends(hop.model), registry, options);
      HopRecord hop_record;
      hop_record.from_lang = hop.from_lang;
      hop_record.to_lang = hop.to_lang;
      hop_record.model_id = hop.model.id;
      hop_record.output = out.text;
      hop_record.raw = std::move(out.raw);
      hop_record.whitespace_tokens = out.whitespace_tokens;
      hop_record.backend_tokens = out.backend_tokens;
      hop_record.language_flagged = out.language_flagged;
      hop_record.prefix_stripped = out.prefix_stripped;
      state = hop_record.output;
      record.hops.push_back(std::move(hop_record));
    } catch (const EmptyOutputError& e) {
      throw EmptyOutputError(describe() + ": " + e.what());
    } catch (const TransportError& e) {
      throw TransportError(describe() + ": " + e.what(), e.transient(),
                           e.http_status());
    } catch (const Error& e) {
      throw Error(e.kind(), describe() + ": " + e.what());
    }
  }
  record.final_text = std::move(state);
  record.wall_ms = (now_ms ? now_ms() : 0.0) - start;
  return record;
}

}  // namespace relay::backend
