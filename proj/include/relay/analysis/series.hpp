// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relay::analysis {

// Per-document score trajectory over checkpoint iterations for one metric.
struct MetricSeries {
  std::string doc_id;
  std::string metric;
  std::vector<std::pair<int, double>> points;  // (iteration, value)
  // false for ingested metrics whose raw scale is unbounded (raw BLEURT);
  // the [0,1] invariant is enforced only for bounded series
  bool bounded = true;

  void validate() const;  // strictly increasing iterations, t=0 present, range
};

using SeriesSet = std::vector<MetricSeries>;

// The checkpoint states of one document's chain.
struct CheckpointTexts {
  std::string doc_id;
  std::vector<std::pair<int, std::string>> texts;  // (iteration, d^(t))

  const std::string* text_at(int t) const;
};

using PairScorer =
    std::function<double(std::string_view metric, std::string_view candidate,
                         std::string_view reference)>;

// value at checkpoint t = metric(d^(t), d^(0)); t=0 is the self-comparison.
// A checkpoint missing from the trace is an error naming the iteration.
MetricSeries series_from_trace(const CheckpointTexts& trace, std::string_view metric,
                               const std::vector<int>& checkpoints,
                               const PairScorer& scorer = {});

// CSV schema: doc_id,metric,iteration,value  (shared by exports and
// external-score ingestion; round-trips losslessly)
void write_series_csv(std::ostream& out, const SeriesSet& series);
// Out-of-order rows are sorted; duplicate (doc,metric,iteration) rows and
// schema violations are errors with the line number. Values outside [0,1]
// are accepted and mark the series unbounded unless `clamp` is set.
SeriesSet read_series_csv(std::istream& in, bool clamp = false);

std::string format_double(double v);  // shortest round-trippable form

}  // namespace relay::analysis
