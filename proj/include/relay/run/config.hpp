// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "relay/analysis/gradient.hpp"
#include "relay/backend/http_transport.hpp"
#include "relay/backend/noise.hpp"
#include "relay/chain/spec.hpp"

namespace relay::run {

struct EndpointConfig {
  enum class Kind { http, noise, scripted };
  std::string id;
  Kind kind = Kind::http;
  backend::HttpEndpointConfig http;       // kind == http
  backend::NoiseChannelSpec noise;        // kind == noise
  std::filesystem::path replies_file;     // kind == scripted: JSON array of replies
  chain::DecodingParams decoding;         // applied to models using this endpoint

  bool simulated() const { return kind != Kind::http; }
};

struct CorpusConfig {
  std::filesystem::path path;
  std::string dataset;  // report label
  std::size_t min_words = 100;
  std::size_t max_words = 200;
  std::size_t sample_n = 150;
  std::uint64_t seed = 7;
};

struct ExperimentConfig {
  CorpusConfig corpus;
  std::filesystem::path output_dir;
  int parallel = 4;
  std::vector<int> checkpoint_grid;  // empty = default grid
  std::vector<std::string> metric_ids = {"bleu", "rouge1", "chrf", "meteor"};
  std::string judge_endpoint;  // endpoint id; required for factscore
  analysis::GradientEstimator estimator = analysis::GradientEstimator::segment_mean;
  std::map<std::string, EndpointConfig> endpoints;
  std::vector<chain::ChainSpec> chains;
  chain::LanguageRegistry languages = chain::LanguageRegistry::builtin();
  std::vector<std::string> strip_prefixes;

  // provenance, used for hashing and for the copy stored in the run dir
  std::filesystem::path source_path;
  std::string source_text;
  nlohmann::json raw;

  const EndpointConfig& endpoint(const std::string& id) const;
};

// Parse + full validation; every error is a validation/parse Error that the
// CLI maps to exit code 1 before anything executes.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& source_path = {});

// FNV-1a over the canonical JSON form of the parsed tree; stable under key
// reordering and whitespace/comment changes.
std::string config_hash(const nlohmann::json& raw);

}  // namespace relay::run
