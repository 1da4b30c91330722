// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/backend/prompt.hpp"

#include "relay/core/error.hpp"

namespace relay::backend {

namespace {

// Trailing spaces inside these literals are intentional; do not "clean"
// them, the golden tests will catch it.
constexpr std::string_view kBase =
    "You are a translation expert. Given a passage, a source language, and a target language, \n"
    "translate the passage from the source language to the target language while preserving\n"
    "all the original meaning and without losing any context. \n"
    "Do not write an introduction or a summary. Return only the translated passage.\n"
    "Translate the following text from {source_language} to {target_language}: {document}";

constexpr std::string_view kSimple =
    "Translate the following text from {source_language} to {target_language}: {document}";

constexpr std::string_view kConstrained =
    "You are a translation expert. Please follow these instructions carefully:\n"
    "- Task: You will receive a paragraph in {source_language}.\n"
    "- Objective: Translate the paragraph into {target_language}.\n"
    "- Guidelines:\n"
    "  - Do not write an introduction or a summary. \n"
    "  - Preserve the original meaning entirely; ensure no information is lost or altered.\n"
    "  - Do not add, omit, or modify any details from the original paragraph.\n"
    "  - Maintain the tone and style as closely as possible.\n"
    "- Paragraph: {document}";

constexpr std::string_view kRephrase =
    "Given a passage, rephrase it while preserving all the original meaning and\n"
    "without losing any context. \n"
    "Do not write an introduction or a summary. Return only the rephrased passage.\n"
    "\n"
    "Rephrase the following text: {document}";

}  // namespace

std::string_view prompt_template(chain::PromptVariant variant) {
  switch (variant) {
    case chain::PromptVariant::simple: return kSimple;
    case chain::PromptVariant::base: return kBase;
    case chain::PromptVariant::constrained: return kConstrained;
    case chain::PromptVariant::rephrase: return kRephrase;
  }
  throw Error(ErrorKind::contract, "unknown prompt variant");
}

std::string render_prompt(chain::PromptVariant variant,
                          const chain::Language* source,
                          const chain::Language* target,
                          std::string_view document) {
  const bool rephrase = variant == chain::PromptVariant::rephrase;
  if (!rephrase) {
    if (!source || !target)
      throw Error(ErrorKind::contract,
                  "translation prompts need both source and target languages");
    if (source->code == target->code)
      throw Error(ErrorKind::contract,
                  "source equals target language (" + source->code + ")");
  }

  // One left-to-right pass over the template so substituted text (which may
  // itself contain braces) is never rescanned.
  const std::string_view tmpl = prompt_template(variant);
  std::string out;
  out.reserve(tmpl.size() + document.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const std::size_t close = tmpl.find('}', i);
      const std::string_view key = tmpl.substr(i + 1, close - i - 1);
      if (key == "document") {
        out += document;
      } else if (key == "source_language") {
        out += source->name;
      } else if (key == "target_language") {
        out += target->name;
      } else {
        throw Error(ErrorKind::contract,
                    "unknown placeholder {" + std::string(key) + "} in template");
      }
      i = close + 1;
    } else {
      out.push_back(tmpl[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace relay::backend
