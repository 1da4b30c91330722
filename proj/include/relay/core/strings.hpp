// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace relay {

bool is_space_cp(char32_t cp);

// Lenient UTF-8 decode; each invalid byte becomes U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(char32_t cp);

// Strips leading/trailing Unicode whitespace.
std::string trim(std::string_view s);

// Whitespace-separated chunks (Unicode whitespace).
std::vector<std::string> split_whitespace(std::string_view s);

// Trim plus collapse of internal whitespace runs to a single space.
std::string collapse_whitespace(std::string_view s);

// ASCII-only lowercasing; non-ASCII bytes pass through.
std::string lowercase_ascii(std::string_view s);

std::size_t count_words(std::string_view s);

}  // namespace relay
