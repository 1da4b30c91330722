// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/chain/spec.hpp"

#include <set>

#include "relay/core/error.hpp"

namespace relay::chain {

namespace {

[[noreturn]] void invalid(const ChainSpec& spec, const std::string& what) {
  throw Error(ErrorKind::validation, "chain '" + spec.id + "': " + what);
}

}  // namespace

Setup parse_setup(std::string_view s) {
  if (s == "self_loop") return Setup::self_loop;
  if (s == "two_player") return Setup::two_player;
  if (s == "multilingual") return Setup::multilingual;
  throw Error(ErrorKind::validation, "unknown setup '" + std::string(s) + "'");
}

Task parse_task(std::string_view s) {
  if (s == "translate") return Task::translate;
  if (s == "rephrase") return Task::rephrase;
  throw Error(ErrorKind::validation, "unknown task '" + std::string(s) + "'");
}

PromptVariant parse_prompt_variant(std::string_view s) {
  if (s == "simple") return PromptVariant::simple;
  if (s == "base") return PromptVariant::base;
  if (s == "constrained") return PromptVariant::constrained;
  if (s == "rephrase") return PromptVariant::rephrase;
  throw Error(ErrorKind::validation,
              "unknown prompt variant '" + std::string(s) + "'");
}

std::string_view setup_name(Setup s) {
  switch (s) {
    case Setup::self_loop: return "self_loop";
    case Setup::two_player: return "two_player";
    case Setup::multilingual: return "multilingual";
  }
  return "?";
}

std::string_view task_name(Task t) {
  return t == Task::translate ? "translate" : "rephrase";
}

std::string_view prompt_variant_name(PromptVariant v) {
  switch (v) {
    case PromptVariant::simple: return "simple";
    case PromptVariant::base: return "base";
    case PromptVariant::constrained: return "constrained";
    case PromptVariant::rephrase: return "rephrase";
  }
  return "?";
}

int ChainSpec::hops_per_iteration() const {
  if (task == Task::rephrase) return 1;
  if (setup == Setup::multilingual) {
    const int hops = multilingual_hops > 0
                         ? multilingual_hops
                         : static_cast<int>(bridge_langs.size()) + 1;
    return hops;
  }
  return 2;
}

std::string ChainSpec::lang_pair_label() const {
  if (task == Task::rephrase) return "rephrase";
  std::string label = source_lang + "<->";
  for (std::size_t i = 0; i < bridge_langs.size(); ++i) {
    if (i) label.push_back('+');
    label += bridge_langs[i];
  }
  return label;
}

std::string ChainSpec::model_label() const {
  std::string label;
  for (std::size_t i = 0; i < model_pool.size(); ++i) {
    if (i) label.push_back('+');
    label += model_pool[i].id;
  }
  return label;
}

const ChainSpec& validate_spec(const ChainSpec& spec,
                               const LanguageRegistry& registry) {
  if (spec.id.empty()) throw Error(ErrorKind::validation, "chain id must be non-empty");
  if (spec.iterations_n < 1) invalid(spec, "iterations must be >= 1");
  registry.get(spec.source_lang);

  std::set<std::string> seen;
  for (const auto& bridge : spec.bridge_langs) {
    registry.get(bridge);
    if (bridge == spec.source_lang)
      invalid(spec, "source language " + spec.source_lang +
                        " must not appear among the bridges");
    if (!seen.insert(bridge).second)
      invalid(spec, "duplicate bridge language " + bridge);
  }

  if (spec.model_pool.empty()) invalid(spec, "model pool must be non-empty");
  std::set<std::string> model_ids;
  for (const auto& model : spec.model_pool) {
    if (model.id.empty()) invalid(spec, "model id must be non-empty");
    if (!model_ids.insert(model.id).second)
      invalid(spec, "duplicate model id '" + model.id + "' in pool");
    model.decoding.validate();
  }

  const auto pool = spec.model_pool.size();
  const auto bridges = spec.bridge_langs.size();

  if (spec.task == Task::rephrase) {
    if (!spec.bridge_langs.empty())
      invalid(spec, "task=rephrase forbids bridge languages (got " +
                        std::to_string(bridges) + ")");
    if (spec.prompt_variant != PromptVariant::rephrase)
      invalid(spec, "task=rephrase forces prompt_variant=rephrase");
    if (spec.setup == Setup::multilingual)
      invalid(spec, "task=rephrase supports self_loop and two_player setups only");
    if (spec.setup == Setup::self_loop && pool != 1)
      invalid(spec, "self_loop requires a model pool of exactly 1 (got " +
                        std::to_string(pool) + ")");
    if (spec.setup == Setup::two_player && pool < 2)
      invalid(spec, "two_player requires a model pool of >= 2 (got " +
                        std::to_string(pool) + ")");
    return spec;
  }

  if (spec.prompt_variant == PromptVariant::rephrase)
    invalid(spec, "prompt_variant=rephrase requires task=rephrase");

  switch (spec.setup) {
    case Setup::self_loop:
      if (bridges != 1)
        invalid(spec, "self_loop requires exactly 1 bridge (got " +
                          std::to_string(bridges) + ")");
      if (pool != 1)
        invalid(spec, "self_loop requires a model pool of exactly 1 (got " +
                          std::to_string(pool) + ")");
      break;
    case Setup::two_player:
      if (bridges != 1)
        invalid(spec, "two_player requires exactly 1 bridge (got " +
                          std::to_string(bridges) + ")");
      if (pool < 2)
        invalid(spec, "two_player requires a model pool of >= 2 (got " +
                          std::to_string(pool) + ")");
      break;
    case Setup::multilingual: {
      if (bridges < 2)
        invalid(spec, "multilingual requires >= 2 bridge languages (got " +
                          std::to_string(bridges) + ")");
      const int hops = spec.hops_per_iteration();
      if (hops < 3 || hops > static_cast<int>(bridges) + 1)
        invalid(spec, "multilingual hop count must be between 3 and bridges+1 (" +
                          std::to_string(bridges + 1) + "); got " +
                          std::to_string(hops));
      break;
    }
  }
  return spec;
}

}  // namespace relay::chain
