// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/chain/language.hpp"

#include "relay/core/error.hpp"

namespace relay::chain {

LanguageRegistry LanguageRegistry::builtin() {
  LanguageRegistry reg;
  reg.add({"EN", "English", Script::latin});
  reg.add({"FR", "French", Script::latin});
  reg.add({"DE", "German", Script::latin});
  reg.add({"NL", "Dutch", Script::latin});
  reg.add({"VN", "Vietnamese", Script::latin});
  reg.add({"ZH", "Chinese", Script::non_latin});
  reg.add({"TH", "Thai", Script::non_latin});
  return reg;
}

void LanguageRegistry::add(Language lang) {
  if (lang.code.empty())
    throw Error(ErrorKind::validation, "language code must be non-empty");
  for (char c : lang.code) {
    if (c < 'A' || c > 'Z')
      throw Error(ErrorKind::validation,
                  "language code must be uppercase ASCII: '" + lang.code + "'");
  }
  if (lang.name.empty())
    throw Error(ErrorKind::validation,
                "language '" + lang.code + "' needs a display name");
  auto [it, inserted] = by_code_.emplace(lang.code, std::move(lang));
  if (!inserted)
    throw Error(ErrorKind::validation,
                "duplicate language code '" + it->first + "' in registry");
}

const Language* LanguageRegistry::find(std::string_view code) const {
  auto it = by_code_.find(std::string(code));
  return it == by_code_.end() ? nullptr : &it->second;
}

const Language& LanguageRegistry::get(std::string_view code) const {
  const Language* lang = find(code);
  if (!lang)
    throw Error(ErrorKind::validation,
                "language '" + std::string(code) + "' is not in the registry");
  return *lang;
}

Script parse_script(std::string_view name) {
  if (name == "latin") return Script::latin;
  if (name == "non-latin" || name == "non_latin") return Script::non_latin;
  throw Error(ErrorKind::validation,
              "unknown script family '" + std::string(name) +
                  "' (expected latin or non-latin)");
}

std::string_view script_name(Script s) {
  return s == Script::latin ? "latin" : "non-latin";
}

}  // namespace relay::chain
