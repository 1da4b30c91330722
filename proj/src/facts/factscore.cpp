// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/facts/factscore.hpp"

#include <cctype>

#include "relay/core/strings.hpp"

namespace relay::facts {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::supported: return "supported";
    case Verdict::unsupported: return "unsupported";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

std::string decompose_prompt(std::string_view text) {
  std::string out =
      "You will be given a passage. Break it down into its atomic facts: "
      "short, self-contained declarative statements, each expressing exactly "
      "one piece of information from the passage.\n"
      "Respond with a numbered list only, one fact per line, in this form:\n"
      "1. <fact>\n"
      "2. <fact>\n"
      "Do not write anything before or after the list.\n"
      "\n"
      "Passage: ";
  out += text;
  return out;
}

std::string verify_prompt(std::string_view fact, std::string_view original) {
  std::string out =
      "You will be given a reference text and a claim. Treat the reference "
      "text as the only source of truth. If the reference text supports the "
      "claim, reply with exactly SUPPORTED. Otherwise reply with exactly "
      "UNSUPPORTED. Reply with a single word.\n"
      "\n"
      "Reference text: ";
  out += original;
  out += "\n\nClaim: ";
  out += fact;
  return out;
}

std::vector<std::string> parse_numbered_list(std::string_view reply) {
  std::vector<std::string> facts;
  std::size_t pos = 0;
  while (pos <= reply.size()) {
    std::size_t eol = reply.find('\n', pos);
    if (eol == std::string_view::npos) eol = reply.size();
    std::string_view line = reply.substr(pos, eol - pos);
    pos = eol + 1;

    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t digits = i;
    while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits])))
      ++digits;
    if (digits == i || digits >= line.size()) continue;
    if (line[digits] != '.' && line[digits] != ')') continue;
    const std::string statement = trim(line.substr(digits + 1));
    if (!statement.empty()) facts.push_back(statement);
  }
  return facts;
}

std::optional<Verdict> parse_verdict_reply(std::string_view reply) {
  std::string word = trim(reply);
  if (!word.empty() && word.back() == '.') word.pop_back();
  for (char& c : word) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (word == "SUPPORTED") return Verdict::supported;
  if (word == "UNSUPPORTED") return Verdict::unsupported;
  return std::nullopt;
}

Judge::Judge(std::shared_ptr<backend::ChatTransport> transport, std::string judge_id,
             std::string remote_model, chain::DecodingParams decoding)
    : transport_(std::move(transport)),
      judge_id_(std::move(judge_id)),
      remote_model_(std::move(remote_model)),
      decoding_(decoding) {}

std::string Judge::ask(std::string_view prompt, std::vector<JudgeTurn>* transcript) {
  backend::GenerationRequest request;
  request.model = remote_model_;
  request.prompt = std::string(prompt);
  request.decoding = decoding_;
  if (transcript) transcript->push_back({"prompt", request.prompt});
  backend::GenerationResponse response = transport_->send(request);
  if (transcript) transcript->push_back({"reply", response.text});
  return response.text;
}

std::vector<AtomicFact> Judge::decompose(std::string_view text,
                                         std::vector<JudgeTurn>* transcript) {
  if (trim(text).empty())
    throw Error(ErrorKind::contract, "decompose: text must be non-empty");
  std::vector<JudgeTurn> local;
  std::vector<JudgeTurn>* log = transcript ? transcript : &local;

  const std::string prompt = decompose_prompt(text);
  for (int attempt = 0; attempt < 3; ++attempt) {  // initial ask + 2 re-asks
    const std::string reply = ask(prompt, log);
    const std::vector<std::string> statements = parse_numbered_list(reply);
    if (!statements.empty()) {
      std::vector<AtomicFact> facts;
      facts.reserve(statements.size());
      for (std::size_t i = 0; i < statements.size(); ++i)
        facts.push_back({static_cast<int>(i + 1), statements[i], Verdict::undecided});
      return facts;
    }
  }
  throw JudgeParseError(
      "judge produced no parseable numbered list after 2 re-asks", *log);
}

Verdict Judge::verify(const AtomicFact& fact, std::string_view original,
                      std::vector<JudgeTurn>* transcript) {
  if (fact.statement.empty())
    throw Error(ErrorKind::contract, "verify: fact statement must be non-empty");
  const std::string prompt = verify_prompt(fact.statement, original);
  for (int attempt = 0; attempt < 3; ++attempt) {
    const std::string reply = ask(prompt, transcript);
    if (auto verdict = parse_verdict_reply(reply)) return *verdict;
  }
  return Verdict::undecided;
}

FactScoreResult Judge::factscore(std::string_view generated,
                                 std::string_view original) {
  if (trim(generated).empty() || trim(original).empty())
    throw Error(ErrorKind::contract, "factscore: both texts must be non-empty");

  FactScoreResult result;
  result.judge_id = judge_id_;
  result.facts = decompose(generated, &result.transcript);
  if (result.facts.empty())
    throw Error(ErrorKind::parse, "no facts extracted; factscore is undefined");

  for (AtomicFact& fact : result.facts) {
    fact.verdict = verify(fact, original, &result.transcript);
    switch (fact.verdict) {
      case Verdict::supported: ++result.supported; break;
      case Verdict::unsupported: ++result.unsupported; break;
      case Verdict::undecided: ++result.undecided; break;
    }
  }
  result.score = static_cast<double>(result.supported) /
                 static_cast<double>(result.facts.size());
  return result;
}

}  // namespace relay::facts
