// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/run/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relay/core/error.hpp"
#include "relay/core/rng.hpp"
#include "relay/core/strings.hpp"

namespace relay::run {

namespace {

std::vector<chain::Document> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open corpus file " + path.string());
  std::vector<chain::Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fail = [&](const std::string& what) -> void {
      throw Error(ErrorKind::parse,
                  path.string() + ":" + std::to_string(line_no) + ": " + what);
    };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) fail("malformed JSON record");
    if (!j.is_object() || !j.contains("text") || !j["text"].is_string())
      fail("record needs a string 'text' field");
    std::string id;
    if (j.contains("id")) {
      if (!j["id"].is_string()) fail("'id' must be a string");
      id = j["id"].get<std::string>();
    } else {
      char buf[24];
      std::snprintf(buf, sizeof(buf), "line-%06zu", line_no);
      id = buf;
    }
    try {
      docs.push_back(chain::Document::make(id, j["text"].get<std::string>()));
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return docs;
}

std::vector<chain::Document> read_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<chain::Document> docs;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open corpus file " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      docs.push_back(chain::Document::make(file.stem().string(), buf.str()));
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, file.string() + ": " + e.what());
    }
  }
  return docs;
}

}  // namespace

std::vector<chain::Document> load_corpus(const CorpusConfig& config) {
  if (config.path.empty())
    throw Error(ErrorKind::validation, "config: corpus.path is required");
  if (!std::filesystem::exists(config.path))
    throw Error(ErrorKind::io, "corpus path does not exist: " + config.path.string());

  std::vector<chain::Document> docs = std::filesystem::is_directory(config.path)
                                          ? read_directory(config.path)
                                          : read_jsonl(config.path);
  {
    std::sort(docs.begin(), docs.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < docs.size(); ++i) {
      if (docs[i].id == docs[i - 1].id)
        throw Error(ErrorKind::validation,
                    "corpus contains duplicate document id '" + docs[i].id + "'");
    }
  }

  std::vector<chain::Document> qualifying;
  for (auto& doc : docs) {
    if (doc.word_count >= config.min_words && doc.word_count <= config.max_words)
      qualifying.push_back(std::move(doc));
  }
  if (qualifying.size() < config.sample_n)
    throw Error(ErrorKind::validation,
                "only " + std::to_string(qualifying.size()) + " of " +
                    std::to_string(config.sample_n) +
                    " requested documents fall within [" +
                    std::to_string(config.min_words) + ", " +
                    std::to_string(config.max_words) + "] words");

  Rng rng = stream_for(config.seed, "corpus", 0, "sample");
  rng.partial_shuffle(qualifying, config.sample_n);
  qualifying.resize(config.sample_n);
  std::sort(qualifying.begin(), qualifying.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return qualifying;
}

}  // namespace relay::run
