// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/run/scoring.hpp"

#include <omp.h>

#include "relay/core/error.hpp"

namespace relay::run {

namespace {

analysis::MetricSeries score_slot(const ScoreJob& job, const std::string& metric) {
  analysis::CheckpointTexts trace{job.doc_id, job.texts};
  std::vector<int> checkpoints;
  checkpoints.reserve(job.texts.size());
  for (const auto& [t, text] : job.texts) checkpoints.push_back(t);
  return analysis::series_from_trace(trace, metric, checkpoints);
}

}  // namespace

analysis::SeriesSet score_jobs_serial(const std::vector<ScoreJob>& jobs,
                                      const std::vector<std::string>& metric_ids) {
  analysis::SeriesSet out;
  out.reserve(jobs.size() * metric_ids.size());
  for (const auto& job : jobs)
    for (const auto& metric : metric_ids) out.push_back(score_slot(job, metric));
  return out;
}

analysis::SeriesSet score_jobs_parallel(const std::vector<ScoreJob>& jobs,
                                        const std::vector<std::string>& metric_ids,
                                        int threads) {
  const std::size_t slots = jobs.size() * metric_ids.size();
  analysis::SeriesSet out(slots);
  std::string first_error;

  // Exceptions cannot unwind out of the parallel region; capture the first
  // failure and rethrow after the join.
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (long long slot = 0; slot < static_cast<long long>(slots); ++slot) {
    const std::size_t job_index = static_cast<std::size_t>(slot) / metric_ids.size();
    const std::size_t metric_index = static_cast<std::size_t>(slot) % metric_ids.size();
    try {
      out[static_cast<std::size_t>(slot)] =
          score_slot(jobs[job_index], metric_ids[metric_index]);
    } catch (const std::exception& e) {
#pragma omp critical(relay_scoring_error)
      if (first_error.empty()) first_error = e.what();
    }
  }

  if (!first_error.empty()) throw Error(ErrorKind::contract, first_error);
  return out;
}

}  // namespace relay::run
