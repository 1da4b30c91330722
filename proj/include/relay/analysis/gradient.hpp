// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <string>
#include <vector>

#include "relay/analysis/series.hpp"

namespace relay::analysis {

struct GroupKey {
  std::string dataset;
  std::string model;
  std::string lang_pair;
  std::string metric;

  auto operator<=>(const GroupKey&) const = default;
};

// Per-iteration change of a metric, aggregated across documents.
struct GradientSummary {
  GroupKey group;
  double avg_gradient = 0.0;
  double std_error = 0.0;  // sample stddev of per-doc gradients / sqrt(n)
  int n_documents = 0;
};

enum class GradientEstimator {
  // mean of per-segment finite-difference slopes over the checkpoint grid;
  // exact on linear series and robust to grid refinement
  segment_mean,
  // ordinary least-squares slope over (iteration, value)
  least_squares,
};

// Per-document gradient g_i for one series (needs >= 2 points).
double series_gradient(const MetricSeries& series,
                       GradientEstimator estimator = GradientEstimator::segment_mean);

// g_i per document, then mean and standard error across documents. All
// series must share one checkpoint grid; n = 1 yields std_error = 0.
GradientSummary avg_gradient(const SeriesSet& series, GroupKey group,
                             GradientEstimator estimator = GradientEstimator::segment_mean);

GradientEstimator parse_estimator(std::string_view name);

}  // namespace relay::analysis
