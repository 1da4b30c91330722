#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "relay/core/error.hpp"
#include "relay/core/rng.hpp"
#include "relay/run/corpus.hpp"

using namespace relay::run;
using relay::Error;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("relay-test-" + std::to_string(relay::Rng(std::random_device{}()).next()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string words(int n, const std::string& stem = "word") {
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += " ";
    out += stem + std::to_string(i);
  }
  return out;
}

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("jsonl corpus: filter, deterministic sample, stable order") {
  TempDir tmp;
  const fs::path file = tmp.path / "corpus.jsonl";
  std::string body;
  for (int i = 0; i < 40; ++i) {
    const int len = 80 + i * 4;  // 80..236 words, some outside [100,200]
    body += "{\"id\": \"doc-" + std::to_string(100 + i) + "\", \"text\": \"" +
            words(len) + "\"}\n";
  }
  write(file, body);

  CorpusConfig config;
  config.path = file;
  config.min_words = 100;
  config.max_words = 200;
  config.sample_n = 10;
  config.seed = 7;

  const auto docs = load_corpus(config);
  REQUIRE(docs.size() == 10);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CHECK(docs[i].word_count >= 100);
    CHECK(docs[i].word_count <= 200);
    if (i) CHECK(docs[i - 1].id < docs[i].id);  // ordered by id
  }
  // rerun is identical
  const auto again = load_corpus(config);
  REQUIRE(again.size() == docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) CHECK(again[i].id == docs[i].id);
  // a different seed picks a different subset
  config.seed = 8;
  const auto other = load_corpus(config);
  bool differs = false;
  for (std::size_t i = 0; i < docs.size(); ++i)
    differs = differs || other[i].id != docs[i].id;
  CHECK(differs);
}

TEST_CASE("jsonl corpus: ids default to line numbers; malformed lines are located") {
  TempDir tmp;
  const fs::path file = tmp.path / "c.jsonl";
  write(file, "{\"text\": \"" + words(120) + "\"}\n");
  CorpusConfig config;
  config.path = file;
  config.sample_n = 1;
  const auto docs = load_corpus(config);
  CHECK(docs[0].id == "line-000001");

  write(file, "{\"text\": \"ok " + words(120) + "\"}\nnot json\n");
  CHECK_THROWS_WITH_AS(load_corpus(config), doctest::Contains(":2"), Error);

  write(file, "{\"no_text\": 1}\n");
  CHECK_THROWS_WITH_AS(load_corpus(config), doctest::Contains("text"), Error);
}

TEST_CASE("directory corpus: file stems become ids") {
  TempDir tmp;
  write(tmp.path / "alpha.txt", words(150));
  write(tmp.path / "beta.txt", words(160));
  write(tmp.path / "ignored.md", words(150));
  CorpusConfig config;
  config.path = tmp.path;
  config.sample_n = 2;
  const auto docs = load_corpus(config);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "alpha");
  CHECK(docs[1].id == "beta");
}

TEST_CASE("too few qualifying documents is a hard error") {
  TempDir tmp;
  const fs::path file = tmp.path / "small.jsonl";
  write(file, "{\"id\": \"a\", \"text\": \"" + words(50) + "\"}\n");
  CorpusConfig config;
  config.path = file;
  config.sample_n = 1;
  CHECK_THROWS_WITH_AS(load_corpus(config), doctest::Contains("only 0 of 1"), Error);
}

TEST_CASE("missing path and duplicate ids") {
  CorpusConfig config;
  config.path = "/nonexistent/corpus.jsonl";
  CHECK_THROWS_AS(load_corpus(config), Error);

  TempDir tmp;
  const fs::path file = tmp.path / "dup.jsonl";
  write(file, "{\"id\": \"x\", \"text\": \"" + words(120) + "\"}\n{\"id\": \"x\", \"text\": \"" +
                  words(130) + "\"}\n");
  config.path = file;
  config.sample_n = 1;
  CHECK_THROWS_WITH_AS(load_corpus(config), doctest::Contains("duplicate document id"),
                       Error);
}

TEST_CASE("sample = 0 is rejected at config time") {
  CHECK_THROWS_WITH_AS(
      relay::run::parse_config("[corpus]\npath = \"x\"\nsample = 0\n", "t.toml"),
      doctest::Contains("sample must be >= 1"), Error);
  CHECK_THROWS_AS(
      relay::run::parse_config("[corpus]\npath = \"x\"\nsample = -3\n", "t.toml"),
      Error);
}
