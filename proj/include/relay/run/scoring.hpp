// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "relay/analysis/series.hpp"

namespace relay::run {

// One document's checkpoint texts queued for scoring.
struct ScoreJob {
  std::string doc_id;
  std::vector<std::pair<int, std::string>> texts;  // (iteration, d^(t))
};

// Serial reference implementation: scores every (job, metric) slot in order.
// Kept as the ground truth the parallel kernel is tested against.
analysis::SeriesSet score_jobs_serial(const std::vector<ScoreJob>& jobs,
                                      const std::vector<std::string>& metric_ids);

// OpenMP kernel over the flattened (job x metric) slot space. Each slot
// writes into its own preallocated result, so the output is bit-identical
// to the serial reference regardless of thread count or schedule.
analysis::SeriesSet score_jobs_parallel(const std::vector<ScoreJob>& jobs,
                                        const std::vector<std::string>& metric_ids,
                                        int threads);

}  // namespace relay::run
