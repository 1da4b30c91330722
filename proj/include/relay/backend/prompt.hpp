// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "relay/chain/language.hpp"
#include "relay/chain/spec.hpp"

namespace relay::backend {

// Raw template text for a variant, with {source_language}, {target_language}
// and {document} placeholders. These strings are load-bearing: golden-file
// tests pin the rendered output byte for byte, trailing spaces included.
std::string_view prompt_template(chain::PromptVariant variant);

// Substitutes full display names and the document text. The document is
// inserted verbatim exactly once; translation variants reject a missing
// language or source == target; the rephrase variant ignores languages.
std::string render_prompt(chain::PromptVariant variant,
                          const chain::Language* source,
                          const chain::Language* target,
                          std::string_view document);

}  // namespace relay::backend
