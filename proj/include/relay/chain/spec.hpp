// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "relay/chain/language.hpp"
#include "relay/chain/types.hpp"

namespace relay::chain {

// Chain topologies: one model looping through one bridge language; two or
// more models sharing one bridge; several bridges and models per iteration.
enum class Setup { self_loop, two_player, multilingual };

enum class Task { translate, rephrase };

enum class PromptVariant { simple, base, constrained, rephrase };

Setup parse_setup(std::string_view s);
Task parse_task(std::string_view s);
PromptVariant parse_prompt_variant(std::string_view s);
std::string_view setup_name(Setup s);
std::string_view task_name(Task t);
std::string_view prompt_variant_name(PromptVariant v);

// Declarative description of one experiment chain.
struct ChainSpec {
  std::string id;
  std::string source_lang = "EN";
  std::vector<std::string> bridge_langs;  // ordered, duplicate-free
  std::vector<ModelSpec> model_pool;
  Setup setup = Setup::self_loop;
  // multilingual only: hops per iteration = bridges used + 1; 0 means use
  // every configured bridge each iteration
  int multilingual_hops = 0;
  Task task = Task::translate;
  PromptVariant prompt_variant = PromptVariant::base;
  int iterations_n = 100;
  std::uint64_t seed = 0;
  // when false, model draws reuse the iteration-1 stream so a chain keeps
  // one model assignment for its whole life
  bool resample_models = true;

  int hops_per_iteration() const;
  // "EN<->FR", "EN<->FR+TH", or "rephrase" for rephrasing chains
  std::string lang_pair_label() const;
  std::string model_label() const;  // pool ids joined with '+'
};

// Returns its argument when every ChainSpec invariant holds; otherwise
// throws a validation error naming the violated invariant.
const ChainSpec& validate_spec(const ChainSpec& spec,
                               const LanguageRegistry& registry);

}  // namespace relay::chain
