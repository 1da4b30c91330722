#include <doctest.h>

#include "relay/core/strings.hpp"

using namespace relay;

TEST_CASE("trim removes ascii and unicode whitespace") {
  CHECK(trim("  hello  ") == "hello");
  CHECK(trim("\t\nhello\r\n") == "hello");
  CHECK(trim(" hello　") == "hello");  // nbsp, ideographic space
  CHECK(trim("hello") == "hello");
  CHECK(trim("   ") == "");
  CHECK(trim("") == "");
}

TEST_CASE("trim keeps interior whitespace and multibyte text") {
  CHECK(trim(" a b ") == "a b");
  CHECK(trim(" héllo ") == "héllo");
  CHECK(trim(" สวัสดี ") == "สวัสดี");
}

TEST_CASE("split_whitespace") {
  CHECK(split_whitespace("a b  c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_whitespace("") == std::vector<std::string>{});
  CHECK(split_whitespace("  \t ") == std::vector<std::string>{});
  CHECK(split_whitespace("one two") == std::vector<std::string>{"one", "two"});
}

TEST_CASE("collapse_whitespace") {
  CHECK(collapse_whitespace("  a \t b\n\nc ") == "a b c");
  CHECK(collapse_whitespace("abc") == "abc");
}

TEST_CASE("count_words matches whitespace tokens") {
  CHECK(count_words("the quick brown fox") == 4);
  CHECK(count_words("") == 0);
  CHECK(count_words("  padded   out  ") == 2);
}

TEST_CASE("utf8 round trip and invalid bytes") {
  CHECK(decode_utf8("a£ท").size() == 3);
  CHECK(encode_utf8(U'£') == "\xc2\xa3");
  // a lone continuation byte decodes to the replacement character
  CHECK(decode_utf8("\x80")[0] == char32_t{0xFFFD});
}
