// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "relay/run/trace.hpp"

namespace relay::run {

struct DocStatus {
  std::string state = "pending";  // pending | complete | quarantined
  std::string reason;             // quarantine cause
  int completed_iterations = 0;
};

// Run bookkeeping persisted next to the traces. Updated atomically
// (temp + rename) so a crashed run always leaves a readable manifest.
struct RunManifest {
  std::string config_hash;
  std::string code_version;
  std::string started_at;   // empty under the deterministic null clock
  std::string finished_at;
  std::string state = "running";  // running | complete | failed
  std::uint64_t corpus_seed = 0;
  std::map<std::string, std::uint64_t> chain_seeds;
  // chain id -> doc id -> status
  std::map<std::string, std::map<std::string, DocStatus>> docs;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& file, const KillSwitch* kill = nullptr) const;
  static RunManifest load(const std::filesystem::path& file);
};

}  // namespace relay::run
