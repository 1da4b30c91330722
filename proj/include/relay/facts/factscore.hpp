// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relay/backend/transport.hpp"

namespace relay::facts {

enum class Verdict { supported, unsupported, undecided };

std::string_view verdict_name(Verdict v);

struct AtomicFact {
  int index = 0;
  std::string statement;
  Verdict verdict = Verdict::undecided;
};

struct JudgeTurn {
  std::string role;  // "prompt" | "reply"
  std::string content;
};

struct FactScoreResult {
  std::vector<AtomicFact> facts;
  double score = 0.0;  // supported / total; undecided counts as unsupported
  std::string judge_id;
  int supported = 0;
  int unsupported = 0;
  int undecided = 0;
  std::vector<JudgeTurn> transcript;  // full audit trail, in call order
};

// Raised when the judge never produces a parseable decomposition; carries
// the transcript so the failure can be audited.
class JudgeParseError : public Error {
 public:
  JudgeParseError(std::string message, std::vector<JudgeTurn> transcript)
      : Error(ErrorKind::parse, std::move(message)),
        transcript_(std::move(transcript)) {}
  const std::vector<JudgeTurn>& transcript() const { return transcript_; }

 private:
  std::vector<JudgeTurn> transcript_;
};

// Fixed judge instructions. These are artifacts of this repo (documented in
// docs/judge-prompts.md); changing them changes every factscore.
std::string decompose_prompt(std::string_view text);
std::string verify_prompt(std::string_view fact, std::string_view original);

// "1. fact" / "2) fact" lines; surrounding prose is ignored.
std::vector<std::string> parse_numbered_list(std::string_view reply);
// exactly SUPPORTED or UNSUPPORTED (case-insensitive, optional final '.')
std::optional<Verdict> parse_verdict_reply(std::string_view reply);

class Judge {
 public:
  Judge(std::shared_ptr<backend::ChatTransport> transport, std::string judge_id,
        std::string remote_model,
        chain::DecodingParams decoding = {.temperature = 0.0,
                                          .top_p = std::nullopt,
                                          .max_new_tokens = 8000});

  // Prompts for a numbered list of atomic facts; re-asks twice before
  // giving up with a JudgeParseError.
  std::vector<AtomicFact> decompose(std::string_view text,
                                    std::vector<JudgeTurn>* transcript = nullptr);

  // One SUPPORTED/UNSUPPORTED question with the original as sole evidence;
  // two re-asks, then undecided.
  Verdict verify(const AtomicFact& fact, std::string_view original,
                 std::vector<JudgeTurn>* transcript = nullptr);

  // decompose + verify each fact; score = supported / total.
  FactScoreResult factscore(std::string_view generated, std::string_view original);

  const std::string& id() const { return judge_id_; }

 private:
  std::string ask(std::string_view prompt, std::vector<JudgeTurn>* transcript);

  std::shared_ptr<backend::ChatTransport> transport_;
  std::string judge_id_;
  std::string remote_model_;
  chain::DecodingParams decoding_;
};

}  // namespace relay::facts
