// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>

namespace relay::chain {

// Script family is report metadata only; planning never looks at it.
enum class Script { latin, non_latin };

struct Language {
  std::string code;  // short uppercase tag, e.g. "EN"
  std::string name;  // display name substituted into prompts, e.g. "English"
  Script script = Script::latin;
};

// Open registry: the built-in set covers the languages used by the stock
// experiments; configs may add more without code changes.
class LanguageRegistry {
 public:
  static LanguageRegistry builtin();

  // throws on duplicate or malformed code
  void add(Language lang);

  const Language* find(std::string_view code) const;
  // throws a validation error naming the unresolved code
  const Language& get(std::string_view code) const;

  const std::map<std::string, Language>& all() const { return by_code_; }

 private:
  std::map<std::string, Language> by_code_;
};

Script parse_script(std::string_view name);  // "latin" | "non-latin"
std::string_view script_name(Script s);

}  // namespace relay::chain
