// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace relay::metrics {

// Lowercased word tokens. Never contains empty strings.
using TokenSequence = std::vector<std::string>;

// Deterministic word tokenizer shared by all token-level metrics:
//   - lowercases (ASCII range; other scripts pass through unchanged)
//   - splits on Unicode whitespace
//   - terminal occurrences of . , ! ? ; : " ( ) ' become standalone tokens
//   - hyphens and apostrophes inside a word are preserved
// "Anne-Marie's £50,000" -> [anne-marie's, £50,000]
TokenSequence tokenize(std::string_view text);

std::string join_tokens(const TokenSequence& tokens);

}  // namespace relay::metrics
