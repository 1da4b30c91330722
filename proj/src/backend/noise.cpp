// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/backend/noise.hpp"

#include "relay/core/error.hpp"
#include "relay/core/rng.hpp"
#include "relay/core/strings.hpp"

namespace relay::backend {

void NoiseChannelSpec::validate() const {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(substitution_rate))
    throw Error(ErrorKind::validation, "substitution_rate must be in [0,1]");
  if (!in_unit(deletion_rate))
    throw Error(ErrorKind::validation, "deletion_rate must be in [0,1]");
  if (substitution_rate + deletion_rate > 1.0)
    throw Error(ErrorKind::validation,
                "substitution_rate + deletion_rate must be <= 1");
  for (const auto& word : vocabulary) {
    if (word.empty() || count_words(word) != 1)
      throw Error(ErrorKind::validation,
                  "noise vocabulary entries must be single non-empty tokens");
  }
}

const std::vector<std::string>& builtin_noise_vocabulary() {
  static const std::vector<std::string> vocab = {
      "blorve", "crindle", "dravik", "ellowan", "fenwick", "gorvath", "hulmet",
      "ixtrani", "jorvel", "klindor", "lurvane", "morvick", "nextran", "olvathe",
      "prindle", "quorvan", "ristane", "sorvath", "trindel", "ulvorne", "vextram",
      "worvath", "xandrel", "yolvane", "zorvick", "ambreth", "borvane", "celdrin",
      "dorveth", "elmquist", "farlowe", "gindrath"};
  return vocab;
}

std::string apply_noise(const NoiseChannelSpec& spec, std::string_view input) {
  // With both rates zero the channel is the identity, bit for bit; skipping
  // the rejoin also preserves the caller's original whitespace.
  if (spec.substitution_rate == 0.0 && spec.deletion_rate == 0.0)
    return std::string(input);

  const std::vector<std::string>& vocab =
      spec.vocabulary.empty() ? builtin_noise_vocabulary() : spec.vocabulary;
  Rng rng(fnv1a(input, fnv1a_u64(spec.seed)));

  std::string out;
  out.reserve(input.size());
  bool first = true;
  for (const auto& token : split_whitespace(input)) {
    const double u = rng.next_double();
    const std::string* emit = &token;
    if (u < spec.substitution_rate) {
      emit = &vocab[rng.uniform_below(vocab.size())];
    } else if (u < spec.substitution_rate + spec.deletion_rate) {
      continue;
    }
    if (!first) out.push_back(' ');
    out += *emit;
    first = false;
  }
  return out;
}

}  // namespace relay::backend
