#include <doctest.h>

#include "relay/facts/factscore.hpp"

using namespace relay::facts;
using relay::Error;
using relay::backend::GenerationRequest;
using relay::backend::ScriptedTransport;

namespace {

Judge make_judge(std::shared_ptr<ScriptedTransport> transport) {
  return Judge(std::move(transport), "judge-1", "scripted-model");
}

}  // namespace

TEST_CASE("numbered-list parsing accepts dots, parens and surrounding prose") {
  const auto facts = parse_numbered_list(
      "Here you go:\n1. The driver was fined.\n2) The car cost £50,000.\n"
      "  3. The load fell on a bend.\nThat is all.");
  REQUIRE(facts.size() == 3);
  CHECK(facts[0] == "The driver was fined.");
  CHECK(facts[1] == "The car cost £50,000.");
  CHECK(facts[2] == "The load fell on a bend.");
  CHECK(parse_numbered_list("no list at all").empty());
  CHECK(parse_numbered_list("1.   ").empty());  // empty statement ignored
}

TEST_CASE("verdict parsing is strict but tolerant of case and final period") {
  CHECK(parse_verdict_reply("SUPPORTED") == Verdict::supported);
  CHECK(parse_verdict_reply("  unsupported.\n") == Verdict::unsupported);
  CHECK(parse_verdict_reply("Supported") == Verdict::supported);
  CHECK(!parse_verdict_reply("maybe").has_value());
  CHECK(!parse_verdict_reply("SUPPORTED because...").has_value());
  CHECK(!parse_verdict_reply("").has_value());
}

TEST_CASE("decompose: scripted numbered list becomes facts in order") {
  auto transport = std::make_shared<ScriptedTransport>(
      std::vector<std::string>{"1. A fact.\n2. Another fact.\n3. A third."});
  auto judge = make_judge(transport);
  const auto facts = judge.decompose("some passage");
  REQUIRE(facts.size() == 3);
  CHECK(facts[0].index == 1);
  CHECK(facts[0].statement == "A fact.");
  CHECK(facts[2].statement == "A third.");
  for (const auto& f : facts) CHECK(f.verdict == Verdict::undecided);
}

TEST_CASE("decompose: prose with no list errors after 2 re-asks") {
  auto transport = std::make_shared<ScriptedTransport>(std::vector<std::string>{
      "I cannot help with that.", "Still prose.", "More prose."});
  auto judge = make_judge(transport);
  std::vector<JudgeTurn> transcript;
  CHECK_THROWS_AS(judge.decompose("passage", &transcript), JudgeParseError);
  CHECK(transport->calls() == 3);  // initial + 2 re-asks
  CHECK(transcript.size() == 6);   // prompt/reply per attempt
  try {
    auto t2 = std::make_shared<ScriptedTransport>(
        std::vector<std::string>{"a", "b", "c"});
    make_judge(t2).decompose("passage");
  } catch (const JudgeParseError& e) {
    CHECK(e.transcript().size() == 6);  // transcript attached to the error
  }
}

TEST_CASE("verify: protocol verdicts and the undecided fallback") {
  auto transport = std::make_shared<ScriptedTransport>(std::vector<std::string>{
      "SUPPORTED", "UNSUPPORTED", "maybe", "dunno", "who knows"});
  auto judge = make_judge(transport);
  const AtomicFact fact{1, "The sky is blue.", Verdict::undecided};
  CHECK(judge.verify(fact, "original") == Verdict::supported);
  CHECK(judge.verify(fact, "original") == Verdict::unsupported);
  CHECK(judge.verify(fact, "original") == Verdict::undecided);  // 3 bad replies
  CHECK(transport->calls() == 5);
}

TEST_CASE("factscore: S,S,U over three facts scores 2/3") {
  auto transport = std::make_shared<ScriptedTransport>(std::vector<std::string>{
      "1. one\n2. two\n3. three", "SUPPORTED", "SUPPORTED", "UNSUPPORTED"});
  auto judge = make_judge(transport);
  const auto result = judge.factscore("generated", "original");
  CHECK(result.score == doctest::Approx(2.0 / 3.0));
  CHECK(result.supported == 2);
  CHECK(result.unsupported == 1);
  CHECK(result.undecided == 0);
  CHECK(result.judge_id == "judge-1");
  REQUIRE(result.facts.size() == 3);
  CHECK(result.facts[0].verdict == Verdict::supported);
  CHECK(result.facts[2].verdict == Verdict::unsupported);
}

TEST_CASE("factscore: identity with an all-supported judge is 1.0") {
  auto transport = std::make_shared<ScriptedTransport>(
      [](const GenerationRequest& request, std::size_t) -> std::string {
        if (request.prompt.find("numbered list") != std::string::npos)
          return "1. alpha\n2. beta";
        return "SUPPORTED";
      });
  auto judge = make_judge(transport);
  const auto result = judge.factscore("same text", "same text");
  CHECK(result.score == 1.0);
}

TEST_CASE("factscore: undecided counts against the score but is reported") {
  auto transport = std::make_shared<ScriptedTransport>(std::vector<std::string>{
      "1. one\n2. two", "SUPPORTED", "eh", "hmm", "nope"});
  auto judge = make_judge(transport);
  const auto result = judge.factscore("generated", "original");
  CHECK(result.score == doctest::Approx(0.5));
  CHECK(result.undecided == 1);
}

TEST_CASE("factscore: empty inputs and zero facts are errors") {
  auto transport = std::make_shared<ScriptedTransport>(std::vector<std::string>{});
  auto judge = make_judge(transport);
  CHECK_THROWS_AS(judge.factscore("", "original"), Error);
  CHECK_THROWS_AS(judge.factscore("generated", "  "), Error);
}

TEST_CASE("judge prompts contain only the fixed instructions and inputs") {
  auto transport = std::make_shared<ScriptedTransport>(std::vector<std::string>{
      "1. only fact", "SUPPORTED"});
  auto judge = make_judge(transport);
  const auto result = judge.factscore("GENERATED-MARKER", "ORIGINAL-MARKER");
  REQUIRE(transport->calls() == 2);
  const auto& decompose_req = transport->requests()[0];
  CHECK(decompose_req.prompt.find("GENERATED-MARKER") != std::string::npos);
  CHECK(decompose_req.prompt.find("ORIGINAL-MARKER") == std::string::npos);
  const auto& verify_req = transport->requests()[1];
  CHECK(verify_req.prompt.find("ORIGINAL-MARKER") != std::string::npos);
  CHECK(verify_req.prompt.find("only fact") != std::string::npos);
  CHECK(verify_req.prompt.find("GENERATED-MARKER") == std::string::npos);
  // the audit transcript mirrors the calls
  CHECK(result.transcript.size() == 4);
  CHECK(result.transcript[0].role == "prompt");
  CHECK(result.transcript[1].role == "reply");
}

TEST_CASE("pipeline determinism under a scripted judge") {
  const std::vector<std::string> script = {"1. a\n2. b", "SUPPORTED", "UNSUPPORTED"};
  auto first = make_judge(std::make_shared<ScriptedTransport>(script))
                   .factscore("gen", "orig");
  auto second = make_judge(std::make_shared<ScriptedTransport>(script))
                    .factscore("gen", "orig");
  CHECK(first.score == second.score);
  REQUIRE(first.facts.size() == second.facts.size());
  for (std::size_t i = 0; i < first.facts.size(); ++i) {
    CHECK(first.facts[i].statement == second.facts[i].statement);
    CHECK(first.facts[i].verdict == second.facts[i].verdict);
  }
}

TEST_CASE("exhaustive scripted verdicts: score is supported/total for <= 4 facts") {
  // verdict code 0 -> SUPPORTED, 1 -> UNSUPPORTED, 2 -> garbage (undecided)
  for (int n_facts = 1; n_facts <= 4; ++n_facts) {
    int combos = 1;
    for (int i = 0; i < n_facts; ++i) combos *= 3;
    for (int combo = 0; combo < combos; ++combo) {
      std::vector<std::string> script;
      std::string list;
      for (int i = 0; i < n_facts; ++i)
        list += std::to_string(i + 1) + ". fact number " + std::to_string(i + 1) + "\n";
      script.push_back(list);
      int expected_supported = 0;
      int code = combo;
      for (int i = 0; i < n_facts; ++i) {
        switch (code % 3) {
          case 0:
            script.push_back("SUPPORTED");
            ++expected_supported;
            break;
          case 1:
            script.push_back("UNSUPPORTED");
            break;
          default:
            // three unparseable replies -> undecided
            script.push_back("eh");
            script.push_back("eh");
            script.push_back("eh");
            break;
        }
        code /= 3;
      }
      auto judge = make_judge(std::make_shared<ScriptedTransport>(script));
      const auto result = judge.factscore("gen", "orig");
      REQUIRE(result.score ==
              static_cast<double>(expected_supported) / static_cast<double>(n_facts));
      REQUIRE(result.supported == expected_supported);
    }
  }
}
