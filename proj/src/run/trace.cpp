// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/run/trace.hpp"

#include <fstream>

#include "relay/core/error.hpp"

namespace relay::run {

using nlohmann::json;

json record_to_json(const backend::IterationRecord& record) {
  json hops = json::array();
  for (const auto& hop : record.hops) {
    json h;
    h["from"] = hop.from_lang;
    h["to"] = hop.to_lang;
    h["model"] = hop.model_id;
    h["output"] = hop.output;
    // raw bodies are audit data; skip the copy when identical to the output
    if (hop.raw != hop.output) h["raw"] = hop.raw;
    h["ws_tokens"] = hop.whitespace_tokens;
    if (hop.backend_tokens) h["backend_tokens"] = *hop.backend_tokens;
    if (hop.language_flagged) h["lang_flag"] = true;
    if (hop.prefix_stripped) h["prefix_stripped"] = true;
    hops.push_back(std::move(h));
  }
  json j;
  j["t"] = record.t;
  j["final_text"] = record.final_text;
  j["wall_ms"] = record.wall_ms;
  j["hops"] = std::move(hops);
  return j;
}

backend::IterationRecord record_from_json(const json& j) {
  backend::IterationRecord record;
  record.t = j.at("t").get<int>();
  record.final_text = j.at("final_text").get<std::string>();
  record.wall_ms = j.value("wall_ms", 0.0);
  for (const auto& h : j.at("hops")) {
    backend::HopRecord hop;
    hop.from_lang = h.at("from").get<std::string>();
    hop.to_lang = h.at("to").get<std::string>();
    hop.model_id = h.at("model").get<std::string>();
    hop.output = h.at("output").get<std::string>();
    hop.raw = h.contains("raw") ? h["raw"].get<std::string>() : hop.output;
    hop.whitespace_tokens = h.value("ws_tokens", std::size_t{0});
    if (h.contains("backend_tokens"))
      hop.backend_tokens = h["backend_tokens"].get<long>();
    hop.language_flagged = h.value("lang_flag", false);
    hop.prefix_stripped = h.value("prefix_stripped", false);
    record.hops.push_back(std::move(hop));
  }
  return record;
}

TraceWriter::TraceWriter(std::filesystem::path file, const KillSwitch* kill)
    : file_(std::move(file)), tmp_(file_.string() + ".tmp"), kill_(kill) {}

std::size_t TraceWriter::load_existing() {
  lines_.clear();
  std::ifstream in(file_, std::ios::binary);
  if (!in) return 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw Error(ErrorKind::parse, "trace " + file_.string() + ":" +
                                        std::to_string(line_no) +
                                        ": malformed record");
    const int t = j.value("t", -1);
    if (t != static_cast<int>(lines_.size()))
      throw Error(ErrorKind::parse, "trace " + file_.string() + ":" +
                                        std::to_string(line_no) +
                                        ": expected iteration " +
                                        std::to_string(lines_.size()) + ", found " +
                                        std::to_string(t));
    lines_.push_back(line);
  }
  return lines_.size();
}

void TraceWriter::append(const backend::IterationRecord& record) {
  lines_.push_back(record_to_json(record).dump());
  persist();
}

std::string TraceWriter::last_final_text() const {
  if (lines_.empty())
    throw Error(ErrorKind::contract, "trace " + file_.string() + " is empty");
  return json::parse(lines_.back()).at("final_text").get<std::string>();
}

void TraceWriter::persist() {
  std::error_code ec;
  std::filesystem::create_directories(file_.parent_path(), ec);
  {
    std::ofstream out(tmp_, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + tmp_.string());
    for (const auto& line : lines_) out << line << '\n';
    out.flush();
    if (!out) throw Error(ErrorKind::io, "short write to " + tmp_.string());
  }
  if (kill_) kill_->at("trace:written");
  std::filesystem::rename(tmp_, file_, ec);
  if (ec)
    throw Error(ErrorKind::io,
                "cannot rename " + tmp_.string() + ": " + ec.message());
  if (kill_) kill_->at("trace:renamed");
}

std::vector<backend::IterationRecord> read_trace(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open trace " + file.string());
  std::vector<backend::IterationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw Error(ErrorKind::parse, "trace " + file.string() + ":" +
                                        std::to_string(line_no) +
                                        ": malformed record");
    records.push_back(record_from_json(j));
  }
  return records;
}

void write_file_atomic(const std::filesystem::path& file, std::string_view content,
                       const KillSwitch* kill, std::string_view kill_tag) {
  std::error_code ec;
  if (file.has_parent_path())
    std::filesystem::create_directories(file.parent_path(), ec);
  const std::filesystem::path tmp(file.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::io, "short write to " + tmp.string());
  }
  if (kill) kill->at(std::string(kill_tag) + ":written");
  std::filesystem::rename(tmp, file, ec);
  if (ec)
    throw Error(ErrorKind::io, "cannot rename " + tmp.string() + ": " + ec.message());
  if (kill) kill->at(std::string(kill_tag) + ":renamed");
}

}  // namespace relay::run
