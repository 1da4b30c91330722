// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/run/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "relay/core/error.hpp"
#include "relay/core/rng.hpp"
#include "relay/metrics/metrics.hpp"
#include "relay/run/toml.hpp"

namespace relay::run {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::validation, "config: " + what);
}

const json* find(const json& node, const char* key) {
  auto it = node.find(key);
  return it == node.end() ? nullptr : &*it;
}

std::string need_string(const json& node, const char* key, const std::string& where) {
  const json* v = find(node, key);
  if (!v || !v->is_string()) bad(where + " needs a string '" + key + "'");
  return v->get<std::string>();
}

std::string opt_string(const json& node, const char* key, std::string fallback) {
  const json* v = find(node, key);
  if (!v) return fallback;
  if (!v->is_string()) bad(std::string("'") + key + "' must be a string");
  return v->get<std::string>();
}

double opt_double(const json& node, const char* key, double fallback) {
  const json* v = find(node, key);
  if (!v) return fallback;
  if (!v->is_number()) bad(std::string("'") + key + "' must be a number");
  return v->get<double>();
}

long long opt_int(const json& node, const char* key, long long fallback) {
  const json* v = find(node, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) bad(std::string("'") + key + "' must be an integer");
  return v->get<long long>();
}

bool opt_bool(const json& node, const char* key, bool fallback) {
  const json* v = find(node, key);
  if (!v) return fallback;
  if (!v->is_boolean()) bad(std::string("'") + key + "' must be a boolean");
  return v->get<bool>();
}

std::vector<std::string> string_array(const json& node, const char* key,
                                      const std::string& where) {
  std::vector<std::string> out;
  const json* v = find(node, key);
  if (!v) return out;
  if (!v->is_array()) bad(where + "." + key + " must be an array");
  for (const auto& item : *v) {
    if (!item.is_string()) bad(where + "." + key + " entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

chain::DecodingParams decoding_from(const json& node) {
  chain::DecodingParams params;
  params.temperature = opt_double(node, "temperature", 0.0);
  if (const json* tp = find(node, "top_p")) {
    if (!tp->is_number()) bad("'top_p' must be a number");
    params.top_p = tp->get<double>();
  }
  params.max_new_tokens =
      static_cast<int>(opt_int(node, "max_new_tokens", 8000));
  params.validate();
  return params;
}

EndpointConfig endpoint_from(const std::string& id, const json& node) {
  EndpointConfig ep;
  ep.id = id;
  const std::string kind = need_string(node, "kind", "endpoint '" + id + "'");
  if (kind == "http") {
    ep.kind = EndpointConfig::Kind::http;
    ep.http.base_url = need_string(node, "base_url", "endpoint '" + id + "'");
    ep.http.path = opt_string(node, "path", ep.http.path);
    ep.http.model = opt_string(node, "model", id);
    ep.http.api_key_env = opt_string(node, "api_key_env", "");
    ep.http.timeout_s = static_cast<int>(opt_int(node, "timeout_s", 120));
    ep.http.max_in_flight = static_cast<int>(opt_int(node, "max_in_flight", 4));
    if (ep.http.max_in_flight < 1) bad("endpoint '" + id + "': max_in_flight must be >= 1");
  } else if (kind == "noise") {
    ep.kind = EndpointConfig::Kind::noise;
    ep.noise.substitution_rate = opt_double(node, "substitution_rate", 0.0);
    ep.noise.deletion_rate = opt_double(node, "deletion_rate", 0.0);
    ep.noise.seed = static_cast<std::uint64_t>(opt_int(node, "seed", 0));
    ep.noise.vocabulary = string_array(node, "vocabulary", "endpoint '" + id + "'");
    try {
      ep.noise.validate();
    } catch (const Error& e) {
      bad("endpoint '" + id + "': " + e.what());
    }
  } else if (kind == "scripted") {
    ep.kind = EndpointConfig::Kind::scripted;
    ep.replies_file = need_string(node, "replies_file", "endpoint '" + id + "'");
  } else {
    bad("endpoint '" + id + "': unknown kind '" + kind +
        "' (expected http, noise or scripted)");
  }
  ep.decoding = decoding_from(node);
  return ep;
}

}  // namespace

const EndpointConfig& ExperimentConfig::endpoint(const std::string& id) const {
  auto it = endpoints.find(id);
  if (it == endpoints.end())
    bad("unknown endpoint id '" + id + "'");
  return it->second;
}

ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& source_path) {
  ExperimentConfig config;
  config.source_path = source_path;
  config.source_text = std::string(text);
  config.raw = parse_toml(text);
  const json& root = config.raw;

  // languages first: chains may reference extensions
  if (const json* langs = find(root, "languages")) {
    if (!langs->is_object()) bad("[languages] must be a table of tables");
    for (const auto& [code, body] : langs->items()) {
      chain::Language lang;
      lang.code = code;
      lang.name = need_string(body, "name", "language '" + code + "'");
      lang.script = chain::parse_script(opt_string(body, "script", "latin"));
      config.languages.add(std::move(lang));
    }
  }

  if (const json* corpus = find(root, "corpus")) {
    config.corpus.path = opt_string(*corpus, "path", "");
    config.corpus.dataset = opt_string(
        *corpus, "dataset",
        config.corpus.path.empty() ? "corpus" : config.corpus.path.stem().string());
    const long long min_words = opt_int(*corpus, "min_words", 100);
    const long long max_words = opt_int(*corpus, "max_words", 200);
    const long long sample = opt_int(*corpus, "sample", 150);
    if (min_words < 0 || max_words < 0) bad("corpus word bounds must be >= 0");
    if (sample < 1) bad("corpus.sample must be >= 1");
    if (min_words >= max_words)
      bad("corpus word bounds need min_words < max_words");
    config.corpus.min_words = static_cast<std::size_t>(min_words);
    config.corpus.max_words = static_cast<std::size_t>(max_words);
    config.corpus.sample_n = static_cast<std::size_t>(sample);
    config.corpus.seed = static_cast<std::uint64_t>(opt_int(*corpus, "seed", 7));
  }

  if (const json* run = find(root, "run")) {
    config.output_dir = opt_string(*run, "output_dir", "");
    config.parallel = static_cast<int>(opt_int(*run, "parallel", 4));
    if (config.parallel < 1) bad("run.parallel must be >= 1");
    config.estimator = analysis::parse_estimator(
        opt_string(*run, "gradient_estimator", "segment_mean"));
  }

  if (const json* cps = find(root, "checkpoints")) {
    const json* iters = find(*cps, "iterations");
    if (iters) {
      if (!iters->is_array()) bad("checkpoints.iterations must be an array");
      for (const auto& v : *iters) {
        if (!v.is_number_integer() || v.get<long long>() < 0)
          bad("checkpoints.iterations entries must be non-negative integers");
        config.checkpoint_grid.push_back(static_cast<int>(v.get<long long>()));
      }
      if (config.checkpoint_grid.empty()) bad("checkpoints.iterations must be non-empty");
    }
  }

  if (const json* metrics = find(root, "metrics")) {
    auto ids = string_array(*metrics, "ids", "metrics");
    if (!ids.empty()) config.metric_ids = std::move(ids);
  }
  {
    std::set<std::string> seen;
    for (const auto& id : config.metric_ids) {
      if (!metrics::is_known_metric(id)) bad("unknown metric id '" + id + "'");
      if (!seen.insert(id).second) bad("metric '" + id + "' listed twice");
    }
  }

  if (const json* judge = find(root, "judge"))
    config.judge_endpoint = opt_string(*judge, "endpoint", "");

  if (const json* hygiene = find(root, "hygiene"))
    config.strip_prefixes = string_array(*hygiene, "strip_prefixes", "hygiene");

  if (const json* endpoints = find(root, "endpoints")) {
    if (!endpoints->is_object()) bad("[endpoints] must be a table of tables");
    for (const auto& [id, body] : endpoints->items())
      config.endpoints.emplace(id, endpoint_from(id, body));
  }

  if (const json* chains = find(root, "chain")) {
    if (!chains->is_array()) bad("[[chain]] must be an array of tables");
    std::set<std::string> ids;
    for (const auto& body : *chains) {
      chain::ChainSpec spec;
      spec.id = need_string(body, "id", "chain");
      if (!ids.insert(spec.id).second) bad("duplicate chain id '" + spec.id + "'");
      spec.source_lang = opt_string(body, "source", "EN");
      spec.bridge_langs = string_array(body, "bridges", "chain '" + spec.id + "'");
      spec.setup = chain::parse_setup(opt_string(body, "setup", "self_loop"));
      spec.task = chain::parse_task(opt_string(body, "task", "translate"));
      spec.prompt_variant = chain::parse_prompt_variant(opt_string(
          body, "prompt",
          spec.task == chain::Task::rephrase ? "rephrase" : "base"));
      spec.iterations_n = static_cast<int>(opt_int(body, "iterations", 100));
      spec.seed = static_cast<std::uint64_t>(opt_int(body, "seed", 0));
      spec.multilingual_hops = static_cast<int>(opt_int(body, "hops", 0));
      spec.resample_models = opt_bool(body, "resample_models", true);

      const auto model_ids = string_array(body, "models", "chain '" + spec.id + "'");
      if (model_ids.empty()) bad("chain '" + spec.id + "' needs a models list");
      for (const auto& model_id : model_ids) {
        auto it = config.endpoints.find(model_id);
        if (it == config.endpoints.end())
          bad("chain '" + spec.id + "' references unknown model id '" + model_id +
              "' (no such endpoint)");
        chain::ModelSpec model;
        model.id = model_id;
        model.endpoint_ref = model_id;
        model.decoding = it->second.decoding;
        spec.model_pool.push_back(std::move(model));
      }
      chain::validate_spec(spec, config.languages);
      config.chains.push_back(std::move(spec));
    }
  }

  // cross-checks
  for (const auto& id : config.metric_ids) {
    if (id == "factscore" && config.judge_endpoint.empty())
      bad("metric 'factscore' needs [judge].endpoint");
  }
  if (!config.judge_endpoint.empty() &&
      !config.endpoints.count(config.judge_endpoint))
    bad("judge endpoint '" + config.judge_endpoint + "' is not in [endpoints]");

  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string config_hash(const nlohmann::json& raw) {
  const std::string canonical = raw.dump();
  const std::uint64_t h = fnv1a(canonical);
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace relay::run
