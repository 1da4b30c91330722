// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace relay::chain {

struct DecodingParams {
  double temperature = 0.0;
  // absent means the sampler default; it is then omitted from request bodies
  std::optional<double> top_p;
  int max_new_tokens = 8000;

  void validate() const;  // throws a validation error naming the field
};

struct ModelSpec {
  std::string id;            // unique within a chain's model pool
  std::string endpoint_ref;  // key into the run config's endpoint table
  DecodingParams decoding;
};

struct Document {
  std::string id;
  std::string text;
  std::string language = "EN";
  std::size_t word_count = 0;

  // trims, computes word_count, rejects whitespace-only text
  static Document make(std::string id, std::string_view text,
                       std::string language = "EN");
};

}  // namespace relay::chain
