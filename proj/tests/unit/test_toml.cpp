#include <doctest.h>

#include "relay/core/error.hpp"
#include "relay/run/config.hpp"
#include "relay/run/toml.hpp"

using nlohmann::json;
using relay::Error;
using relay::run::parse_toml;

TEST_CASE("scalars, strings, arrays") {
  const json j = parse_toml(R"(
# an experiment
title = "hello \"quoted\" world"
count = 150
rate = 0.6
neg = -0.004
big = 1_000_000
on = true
off = false
names = ["a", "b", "c"]
nested = [[1, 2], [3]]
multiline = [
  1,
  2,  # comment inside
  3,
]
literal = 'no \n escapes'
unicode = "±"
)");
  CHECK(j["title"] == "hello \"quoted\" world");
  CHECK(j["count"] == 150);
  CHECK(j["rate"] == 0.6);
  CHECK(j["neg"] == -0.004);
  CHECK(j["big"] == 1000000);
  CHECK(j["on"] == true);
  CHECK(j["off"] == false);
  CHECK(j["names"] == json({"a", "b", "c"}));
  CHECK(j["nested"][0][1] == 2);
  CHECK(j["multiline"] == json({1, 2, 3}));
  CHECK(j["literal"] == "no \\n escapes");
  CHECK(j["unicode"] == "±");
}

TEST_CASE("tables and dotted headers") {
  const json j = parse_toml(R"(
top = 1

[corpus]
path = "x.jsonl"

[endpoints.llama]
kind = "http"

[endpoints.mistral]
kind = "noise"
)");
  CHECK(j["top"] == 1);
  CHECK(j["corpus"]["path"] == "x.jsonl");
  CHECK(j["endpoints"]["llama"]["kind"] == "http");
  CHECK(j["endpoints"]["mistral"]["kind"] == "noise");
}

TEST_CASE("arrays of tables") {
  const json j = parse_toml(R"(
[[chain]]
id = "one"
bridges = ["FR"]

[[chain]]
id = "two"
bridges = ["TH"]
)");
  REQUIRE(j["chain"].is_array());
  REQUIRE(j["chain"].size() == 2);
  CHECK(j["chain"][0]["id"] == "one");
  CHECK(j["chain"][1]["bridges"][0] == "TH");
}

TEST_CASE("errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_toml("a = \"unterminated"),
                       doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(parse_toml("a = 1\nb = [1, 2"),
                       doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse_toml("k = 1\nk = 2"),
                       doctest::Contains("duplicate key"), Error);
  CHECK_THROWS_WITH_AS(parse_toml("[t]\na = 1\n[t]\nb = 2"),
                       doctest::Contains("declared twice"), Error);
  CHECK_THROWS_AS(parse_toml("a = @"), Error);
  CHECK_THROWS_AS(parse_toml("a 1"), Error);
  CHECK_THROWS_AS(parse_toml("a = 12x"), Error);
  CHECK_THROWS_AS(parse_toml("a = 1 b = 2"), Error);
}

TEST_CASE("comments and blank lines are ignored") {
  const json j = parse_toml("# leading\n\n  # indented comment\nx = 1  # trailing\n");
  CHECK(j["x"] == 1);
}

TEST_CASE("config hash is stable under key and table reordering") {
  const char* one = R"(
[corpus]
path = "c.jsonl"
seed = 7

[run]
output_dir = "out"
)";
  const char* two = R"(
[run]
output_dir = "out"

[corpus]
seed = 7
path = "c.jsonl"
)";
  CHECK(relay::run::config_hash(parse_toml(one)) ==
        relay::run::config_hash(parse_toml(two)));
  const char* three = R"(
[run]
output_dir = "elsewhere"

[corpus]
seed = 7
path = "c.jsonl"
)";
  CHECK(relay::run::config_hash(parse_toml(one)) !=
        relay::run::config_hash(parse_toml(three)));
}
