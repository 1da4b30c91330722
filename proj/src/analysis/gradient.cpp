// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/analysis/gradient.hpp"

#include <cmath>

#include "relay/core/error.hpp"

namespace relay::analysis {

double series_gradient(const MetricSeries& series, GradientEstimator estimator) {
  const auto& pts = series.points;
  if (pts.size() < 2)
    throw Error(ErrorKind::contract, "series " + series.doc_id + "/" + series.metric +
                                         " needs >= 2 checkpoints for a gradient");
  if (estimator == GradientEstimator::segment_mean) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const double dv = pts[k + 1].second - pts[k].second;
      const double dt = static_cast<double>(pts[k + 1].first - pts[k].first);
      sum += dv / dt;
    }
    return sum / static_cast<double>(pts.size() - 1);
  }
  // least squares: slope = cov(t, v) / var(t)
  const double n = static_cast<double>(pts.size());
  double mean_t = 0.0, mean_v = 0.0;
  for (const auto& [t, v] : pts) {
    mean_t += static_cast<double>(t);
    mean_v += v;
  }
  mean_t /= n;
  mean_v /= n;
  double cov = 0.0, var = 0.0;
  for (const auto& [t, v] : pts) {
    const double dt = static_cast<double>(t) - mean_t;
    cov += dt * (v - mean_v);
    var += dt * dt;
  }
  return cov / var;
}

GradientSummary avg_gradient(const SeriesSet& series, GroupKey group,
                             GradientEstimator estimator) {
  if (series.empty())
    throw Error(ErrorKind::contract, "avg_gradient needs at least one series");
  const auto& grid = series.front().points;
  for (const auto& s : series) {
    if (s.points.size() != grid.size())
      throw Error(ErrorKind::contract,
                  "mismatched checkpoint grids: " + s.doc_id + "/" + s.metric);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (s.points[i].first != grid[i].first)
        throw Error(ErrorKind::contract,
                    "mismatched checkpoint grids: " + s.doc_id + "/" + s.metric +
                        " at iteration " + std::to_string(s.points[i].first));
    }
  }

  std::vector<double> gradients;
  gradients.reserve(series.size());
  for (const auto& s : series) gradients.push_back(series_gradient(s, estimator));

  const double n = static_cast<double>(gradients.size());
  double mean = 0.0;
  for (double g : gradients) mean += g;
  mean /= n;

  double std_error = 0.0;
  if (gradients.size() > 1) {
    double ss = 0.0;
    for (double g : gradients) {
      const double d = g - mean;
      ss += d * d;
    }
    std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }

  GradientSummary summary;
  summary.group = std::move(group);
  summary.avg_gradient = mean;
  summary.std_error = std_error;
  summary.n_documents = static_cast<int>(gradients.size());
  return summary;
}

GradientEstimator parse_estimator(std::string_view name) {
  if (name == "segment_mean") return GradientEstimator::segment_mean;
  if (name == "least_squares") return GradientEstimator::least_squares;
  throw Error(ErrorKind::validation,
              "unknown gradient estimator '" + std::string(name) +
                  "' (expected segment_mean or least_squares)");
}

}  // namespace relay::analysis
