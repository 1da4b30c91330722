#include <doctest.h>

#include <chrono>

#include "relay/backend/backend.hpp"
#include "relay/backend/http_transport.hpp"
#include "relay/core/rng.hpp"
#include "relay/core/strings.hpp"

using namespace relay::backend;
using relay::EmptyOutputError;
using relay::Error;
using relay::chain::ChainSpec;
using relay::chain::DecodingParams;
using relay::chain::Hop;
using relay::chain::HopPlan;
using relay::chain::LanguageRegistry;
using relay::chain::ModelSpec;
using relay::chain::PromptVariant;

namespace {

const LanguageRegistry& registry() {
  static const LanguageRegistry reg = LanguageRegistry::builtin();
  return reg;
}

Hop hop_en_fr(DecodingParams decoding = {}) {
  return {"EN", "FR", ModelSpec{"llama", "llama", decoding}};
}

// transport that fails transiently n times, then succeeds
class FlakyTransport : public ChatTransport {
 public:
  explicit FlakyTransport(int failures, std::string reply)
      : failures_(failures), reply_(std::move(reply)) {}
  GenerationResponse send(const GenerationRequest&) override {
    ++calls_;
    if (failures_-- > 0) throw TransportError("HTTP 503", /*transient=*/true, 503);
    return {reply_, reply_, std::nullopt, std::nullopt};
  }
  int calls() const { return calls_; }

 private:
  int failures_;
  std::string reply_;
  int calls_ = 0;
};

}  // namespace

TEST_CASE("chat request body carries the hop's decoding params exactly") {
  DecodingParams llama{.temperature = 0.6, .top_p = 0.9, .max_new_tokens = 8000};
  GenerationRequest request{"meta-llama/Llama-3.1-8B-Instruct", "prompt text", llama};
  const auto body = build_chat_body(request);
  CHECK(body["model"] == "meta-llama/Llama-3.1-8B-Instruct");
  CHECK(body["temperature"] == 0.6);
  CHECK(body["top_p"] == 0.9);
  CHECK(body["max_tokens"] == 8000);
  CHECK(body["messages"][0]["role"] == "user");
  CHECK(body["messages"][0]["content"] == "prompt text");
}

TEST_CASE("absent top_p is omitted from the request body entirely") {
  DecodingParams mistral{.temperature = 0.0, .top_p = std::nullopt,
                         .max_new_tokens = 8000};
  const auto body = build_chat_body({"mistral-7b", "p", mistral});
  CHECK(!body.contains("top_p"));
  CHECK(body["temperature"] == 0.0);
}

TEST_CASE("chat response parsing extracts the first choice and usage") {
  const auto resp = parse_chat_response(
      R"({"choices":[{"message":{"content":"Bonjour"}}],)"
      R"("usage":{"prompt_tokens":12,"completion_tokens":3}})");
  CHECK(resp.text == "Bonjour");
  CHECK(*resp.prompt_tokens == 12);
  CHECK(*resp.completion_tokens == 3);
  CHECK_THROWS_AS(parse_chat_response("not json"), TransportError);
  CHECK_THROWS_AS(parse_chat_response(R"({"choices":[]})"), TransportError);
}

TEST_CASE("recording fake: request uses exactly the hop model's decoding") {
  auto scripted = std::make_shared<ScriptedTransport>(
      std::vector<std::string>{"salut"});
  ChatBackend backend(scripted, "remote-llama", &registry());
  DecodingParams gemma{.temperature = 1.0, .top_p = 0.95, .max_new_tokens = 8000};
  backend.execute(hop_en_fr(gemma), PromptVariant::base, "hello");
  REQUIRE(scripted->calls() == 1);
  const GenerationRequest& seen = scripted->requests()[0];
  CHECK(seen.model == "remote-llama");
  CHECK(seen.decoding.temperature == 1.0);
  CHECK(seen.decoding.top_p == 0.95);
  CHECK(seen.decoding.max_new_tokens == 8000);
  CHECK(seen.prompt.find("from English to French: hello") != std::string::npos);
}

TEST_CASE("retry: transient failures back off, then succeed") {
  auto flaky = std::make_shared<FlakyTransport>(2, "ok");
  RetryPolicy policy;
  std::vector<std::chrono::milliseconds> slept;
  policy.sleep = [&](std::chrono::milliseconds d) { slept.push_back(d); };
  RetryingTransport transport(flaky, policy);
  const auto resp = transport.send({"m", "p", {}});
  CHECK(resp.text == "ok");
  CHECK(flaky->calls() == 3);
  REQUIRE(slept.size() == 2);
  // jittered 1s and 4s
  CHECK(slept[0].count() >= 750);
  CHECK(slept[0].count() <= 1250);
  CHECK(slept[1].count() >= 3000);
  CHECK(slept[1].count() <= 5000);
}

TEST_CASE("retry: budget exhausts after 3 retries, permanent fails fast") {
  auto dead = std::make_shared<FlakyTransport>(1000, "never");
  RetryPolicy policy;
  policy.sleep = [](std::chrono::milliseconds) {};
  RetryingTransport transport(dead, policy);
  CHECK_THROWS_AS(transport.send({"m", "p", {}}), TransportError);
  CHECK(dead->calls() == 4);  // 1 attempt + 3 retries

  auto forbidden = std::make_shared<ScriptedTransport>(
      [](const GenerationRequest&, std::size_t) -> std::string {
        throw TransportError("HTTP 401", /*transient=*/false, 401);
      });
  RetryingTransport no_retry(forbidden, policy);
  CHECK_THROWS_AS(no_retry.send({"m", "p", {}}), TransportError);
  CHECK(forbidden->calls() == 1);
}

TEST_CASE("execute_hop strips whitespace and flags empty output") {
  NoiseChannelSpec identity;
  NoiseBackend backend(identity);
  const auto out = execute_hop(hop_en_fr(), PromptVariant::base, "  padded  ",
                               backend, registry());
  CHECK(out.text == "padded");

  auto empty_reply = std::make_shared<ScriptedTransport>(
      std::vector<std::string>{"   \n  "});
  ChatBackend chat(empty_reply, "m", &registry());
  CHECK_THROWS_AS(
      execute_hop(hop_en_fr(), PromptVariant::base, "text", chat, registry()),
      EmptyOutputError);
}

TEST_CASE("execute_hop rejects empty input (caller contract)") {
  NoiseBackend backend(NoiseChannelSpec{});
  CHECK_THROWS_AS(
      execute_hop(hop_en_fr(), PromptVariant::base, "  ", backend, registry()),
      Error);
}

TEST_CASE("boilerplate prefixes are stripped only when configured") {
  auto chatty = std::make_shared<ScriptedTransport>(std::vector<std::string>{
      "Here is the translation: Bonjour tout le monde",
      "Here is the translation: Bonjour tout le monde"});
  ChatBackend backend(chatty, "m", &registry());
  const auto raw =
      execute_hop(hop_en_fr(), PromptVariant::base, "x", backend, registry());
  CHECK(raw.text == "Here is the translation: Bonjour tout le monde");
  CHECK(!raw.prefix_stripped);

  HopOptions options;
  options.strip_prefixes = {"Here is the translation:"};
  const auto cleaned = execute_hop(hop_en_fr(), PromptVariant::base, "x", backend,
                                   registry(), options);
  CHECK(cleaned.text == "Bonjour tout le monde");
  CHECK(cleaned.prefix_stripped);
}

TEST_CASE("language flag: latin output where thai was expected") {
  auto english = std::make_shared<ScriptedTransport>(std::vector<std::string>{
      "This is clearly English text, not Thai at all.",
      "สวัสดีครับ "
      "นี่คือข้อความ"});
  ChatBackend backend(english, "m", &registry());
  const Hop to_thai{"EN", "TH", ModelSpec{"m", "m", {}}};
  const auto flagged =
      execute_hop(to_thai, PromptVariant::base, "x", backend, registry());
  CHECK(flagged.language_flagged);
  const auto ok = execute_hop(to_thai, PromptVariant::base, "x", backend, registry());
  CHECK(!ok.language_flagged);
}

TEST_CASE("run_iteration composes hops and never mutates its input") {
  NoiseBackend identity(NoiseChannelSpec{});
  const auto table = [&](const ModelSpec&) -> Backend& { return identity; };
  HopPlan plan;
  plan.hops = {hop_en_fr(), {"FR", "EN", ModelSpec{"llama", "llama", {}}}};
  const std::string input = "the original text";
  const auto record = run_iteration(plan, 1, input, table, PromptVariant::base,
                                    registry());
  CHECK(record.t == 1);
  REQUIRE(record.hops.size() == 2);
  CHECK(record.final_text == input);
  CHECK(record.hops.back().output == record.final_text);
  CHECK(input == "the original text");
}

TEST_CASE("run_iteration names the failing hop index") {
  NoiseBackend identity(NoiseChannelSpec{});
  NoiseChannelSpec destroy;
  destroy.deletion_rate = 1.0;
  NoiseBackend eater(destroy);
  const auto table = [&](const ModelSpec& m) -> Backend& {
    if (m.id == "eater") return eater;
    return identity;
  };
  HopPlan plan;
  plan.hops = {hop_en_fr(), {"FR", "EN", ModelSpec{"eater", "eater", {}}}};
  CHECK_THROWS_WITH_AS(run_iteration(plan, 1, "doomed text", table,
                                     PromptVariant::base, registry()),
                       doctest::Contains("hop 2"), EmptyOutputError);
}

TEST_CASE("scripted transport exhaustion is a permanent transport error") {
  auto scripted = std::make_shared<ScriptedTransport>(std::vector<std::string>{});
  ChatBackend backend(scripted, "m", &registry());
  try {
    execute_hop(hop_en_fr(), PromptVariant::base, "x", backend, registry());
    FAIL("expected TransportError");
  } catch (const TransportError& e) {
    CHECK(!e.transient());
  }
}

TEST_CASE("three substitution hops keep ~0.9^3 of tokens in expectation") {
  NoiseChannelSpec spec;
  spec.substitution_rate = 0.1;
  spec.seed = 12;
  spec.vocabulary = {"subq"};  // never collides with the input vocabulary
  NoiseBackend channel(spec);
  const auto table = [&](const ModelSpec&) -> Backend& { return channel; };
  HopPlan plan;
  plan.hops = {{"EN", "FR", ModelSpec{"c", "c", {}}},
               {"FR", "TH", ModelSpec{"c", "c", {}}},
               {"TH", "EN", ModelSpec{"c", "c", {}}}};

  // Documents must be long enough that a hop changing nothing (and the
  // deterministic channel then repeating itself on the identical input) is
  // rare: P(no-op hop) = 0.9^50 < 0.6%.
  relay::Rng rng(9);
  long total = 0, survived = 0;
  for (int trial = 0; trial < 400; ++trial) {  // 400 x 50 = 2*10^4 tokens
    std::string input;
    for (int i = 0; i < 50; ++i)
      input += (i ? " v" : "v") + std::to_string(rng.uniform_below(100000));
    const auto record =
        run_iteration(plan, 1, input, table, PromptVariant::base, registry());
    const auto in_toks = relay::split_whitespace(input);
    const auto out_toks = relay::split_whitespace(record.final_text);
    REQUIRE(out_toks.size() == in_toks.size());  // substitution preserves count
    for (std::size_t i = 0; i < in_toks.size(); ++i) {
      ++total;
      if (in_toks[i] == out_toks[i]) ++survived;
    }
  }
  const double fraction = static_cast<double>(survived) / static_cast<double>(total);
  CHECK(std::abs(fraction - 0.729) <= 0.02);
}
