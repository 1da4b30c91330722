// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/chain/types.hpp"

#include <cmath>

#include "relay/core/error.hpp"
#include "relay/core/strings.hpp"

namespace relay::chain {

void DecodingParams::validate() const {
  if (!std::isfinite(temperature) || temperature < 0.0)
    throw Error(ErrorKind::validation,
                "decoding temperature must be finite and >= 0");
  if (top_p && (!(*top_p > 0.0) || *top_p > 1.0))
    throw Error(ErrorKind::validation, "decoding top_p must be in (0, 1]");
  if (max_new_tokens < 1)
    throw Error(ErrorKind::validation, "decoding max_new_tokens must be >= 1");
}

Document Document::make(std::string id, std::string_view text,
                        std::string language) {
  Document doc;
  doc.id = std::move(id);
  doc.text = trim(text);
  if (doc.text.empty())
    throw Error(ErrorKind::validation,
                "document '" + doc.id + "' is empty after whitespace trim");
  doc.language = std::move(language);
  doc.word_count = count_words(doc.text);
  return doc;
}

}  // namespace relay::chain
