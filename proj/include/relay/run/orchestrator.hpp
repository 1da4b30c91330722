// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>

#include "relay/run/config.hpp"
#include "relay/run/manifest.hpp"

namespace relay::run {

inline constexpr const char* kCodeVersion = "relay 0.1.0";

struct RunOptions {
  bool dry_run = false;
  bool resume = false;
  std::optional<std::uint64_t> seed_override;  // replaces corpus + chain seeds
  std::optional<int> parallel_override;
  const KillSwitch* kill = nullptr;  // crash injection for tests
  std::ostream* log = nullptr;       // progress output; null = silent
};

struct RunOutcome {
  int docs_total = 0;
  int docs_ok = 0;
  int docs_quarantined = 0;
  bool killed = false;   // a KillSwitch fired; scoring was skipped
  bool dry_run = false;
  std::filesystem::path run_dir;

  // 0 success, 2 partial failure (quarantined documents), 3 total failure
  int exit_code() const {
    if (dry_run || killed) return 0;
    if (docs_total > 0 && docs_ok == 0) return 3;
    return docs_quarantined > 0 ? 2 : 0;
  }
};

// Executes every chain over the sampled corpus: plans and runs iterations
// 1..N per document with per-iteration trace persistence, then scores
// checkpoints and emits series, gradient summaries, report tables and plot
// data under the output directory. Resumable: existing trace records are
// loaded, never re-executed, and the continuation is byte-identical to an
// uninterrupted run.
RunOutcome run_experiment(ExperimentConfig config, const RunOptions& options = {});

// Continues an interrupted run from its directory (or manifest path).
// Refuses to resume when the stored config hash does not match.
RunOutcome resume_run(const std::filesystem::path& run_dir_or_manifest,
                      const RunOptions& options = {});

// Re-scores existing traces without regenerating anything; empty metric
// list means the config's metrics. Rewrites the per-chain series files.
void score_run(const std::filesystem::path& run_dir,
               std::vector<std::string> metric_ids, const RunOptions& options = {});

// Rebuilds gradient summaries, report tables and plot CSVs from the series
// files (including any ingested external scores).
void report_run(const std::filesystem::path& run_dir, const RunOptions& options = {});

// Validates and normalizes an external score CSV (doc_id,metric,iteration,
// value) into the run's external_scores/ directory. chain_id may be empty
// when the run has exactly one chain.
void ingest_scores_into_run(const std::filesystem::path& run_dir,
                            const std::filesystem::path& csv_path,
                            std::string chain_id, bool clamp,
                            const RunOptions& options = {});

}  // namespace relay::run
