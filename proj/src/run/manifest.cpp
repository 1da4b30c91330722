// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/run/manifest.hpp"

#include <fstream>
#include <sstream>

#include "relay/core/error.hpp"

namespace relay::run {

using nlohmann::json;

json RunManifest::to_json() const {
  json docs_json = json::object();
  for (const auto& [chain_id, by_doc] : docs) {
    json chain_json = json::object();
    for (const auto& [doc_id, status] : by_doc) {
      json s;
      s["state"] = status.state;
      if (!status.reason.empty()) s["reason"] = status.reason;
      s["completed_iterations"] = status.completed_iterations;
      chain_json[doc_id] = std::move(s);
    }
    docs_json[chain_id] = std::move(chain_json);
  }
  json j;
  j["config_hash"] = config_hash;
  j["code_version"] = code_version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["state"] = state;
  j["corpus_seed"] = corpus_seed;
  j["chain_seeds"] = chain_seeds;
  j["docs"] = std::move(docs_json);
  return j;
}

RunManifest RunManifest::from_json(const json& j) {
  RunManifest m;
  m.config_hash = j.at("config_hash").get<std::string>();
  m.code_version = j.value("code_version", "");
  m.started_at = j.value("started_at", "");
  m.finished_at = j.value("finished_at", "");
  m.state = j.value("state", "running");
  m.corpus_seed = j.value("corpus_seed", std::uint64_t{0});
  if (j.contains("chain_seeds"))
    m.chain_seeds = j["chain_seeds"].get<std::map<std::string, std::uint64_t>>();
  if (j.contains("docs")) {
    for (const auto& [chain_id, chain_json] : j["docs"].items()) {
      for (const auto& [doc_id, s] : chain_json.items()) {
        DocStatus status;
        status.state = s.value("state", "pending");
        status.reason = s.value("reason", "");
        status.completed_iterations = s.value("completed_iterations", 0);
        m.docs[chain_id][doc_id] = std::move(status);
      }
    }
  }
  return m;
}

void RunManifest::save(const std::filesystem::path& file,
                       const KillSwitch* kill) const {
  write_file_atomic(file, to_json().dump(2) + "\n", kill, "manifest");
}

RunManifest RunManifest::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open manifest " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorKind::parse, "manifest " + file.string() + " is not valid JSON");
  return from_json(j);
}

}  // namespace relay::run
