// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/metrics/tokenize.hpp"

#include "relay/core/strings.hpp"

namespace relay::metrics {

namespace {

bool is_edge_punct(char c) {
  switch (c) {
    case '.':
    case ',':
    case '!':
    case '?':
    case ';':
    case ':':
    case '"':
    case '(':
    case ')':
    case '\'':
      return true;
    default:
      return false;
  }
}

}  // namespace

TokenSequence tokenize(std::string_view text) {
  TokenSequence out;
  for (const std::string& chunk : split_whitespace(text)) {
    // The punctuation set is pure ASCII, so byte-level edge scanning cannot
    // split a multi-byte codepoint.
    std::size_t i = 0;
    std::size_t j = chunk.size();
    while (i < j && is_edge_punct(chunk[i])) ++i;
    while (j > i && is_edge_punct(chunk[j - 1])) --j;
    for (std::size_t k = 0; k < i; ++k) out.emplace_back(1, chunk[k]);
    if (i < j) out.push_back(lowercase_ascii(chunk.substr(i, j - i)));
    for (std::size_t k = j; k < chunk.size(); ++k) out.emplace_back(1, chunk[k]);
  }
  return out;
}

std::string join_tokens(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace relay::metrics
