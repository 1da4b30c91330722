// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace relay::backend {

// Deterministic noisy channel standing in for a real model: each whitespace
// token is independently substituted with probability p or deleted with
// probability q. The RNG stream is keyed by (seed, input text), so identical
// inputs always produce identical outputs regardless of call order.
struct NoiseChannelSpec {
  double substitution_rate = 0.0;  // p
  double deletion_rate = 0.0;      // q
  std::vector<std::string> vocabulary;  // substitution tokens; empty = builtin
  std::uint64_t seed = 0;

  void validate() const;  // p, q in [0,1] and p + q <= 1
};

std::string apply_noise(const NoiseChannelSpec& spec, std::string_view input);

const std::vector<std::string>& builtin_noise_vocabulary();

}  // namespace relay::backend
