// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "relay/backend/backend.hpp"

namespace relay::run {

nlohmann::json record_to_json(const backend::IterationRecord& record);
backend::IterationRecord record_from_json(const nlohmann::json& j);

// Thrown by a KillSwitch hook to simulate a crash at a persistence point.
// Deliberately not a relay::Error: the orchestrator's per-document error
// handling must not swallow it.
struct KillSignal {
  std::string point;
};

// Test hook invoked at named persistence points ("trace:written",
// "trace:renamed", "manifest:written", ...). Production runs never set it.
class KillSwitch {
 public:
  std::function<void(std::string_view point)> hook;
  void at(std::string_view point) const {
    if (hook) hook(point);
  }
};

// One chain trace: iteration records as JSONL, one line per iteration,
// starting with the t=0 record that carries the original document.
//
// Every append rewrites the file through a temp file + rename, so readers
// (and crashed runs) only ever observe a whole number of complete lines.
// Loaded lines are kept verbatim; a resumed writer reproduces the exact
// bytes an uninterrupted run would have written.
class TraceWriter {
 public:
  explicit TraceWriter(std::filesystem::path file, const KillSwitch* kill = nullptr);

  // parses any existing complete trace; returns the number of records
  std::size_t load_existing();

  void append(const backend::IterationRecord& record);

  std::size_t size() const { return lines_.size(); }
  const std::vector<std::string>& lines() const { return lines_; }
  // final_text of the last record; requires size() >= 1
  std::string last_final_text() const;

 private:
  void persist();

  std::filesystem::path file_;
  std::filesystem::path tmp_;
  std::vector<std::string> lines_;
  const KillSwitch* kill_;
};

std::vector<backend::IterationRecord> read_trace(const std::filesystem::path& file);

// Atomic small-file write (temp + rename), shared by manifests and reports.
void write_file_atomic(const std::filesystem::path& file, std::string_view content,
                       const KillSwitch* kill = nullptr,
                       std::string_view kill_tag = "file");

}  // namespace relay::run
