// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relay/analysis/gradient.hpp"

namespace relay::analysis {

// Gradient summaries reshaped into a dataset x model table with one column
// per language pair, the layout used for cross-experiment comparison.
struct ReportTable {
  std::string metric;
  std::vector<std::string> lang_pairs;  // column order
  struct Row {
    std::string dataset;
    std::string model;
    std::vector<std::optional<GradientSummary>> cells;  // one per lang_pair
    int best = -1;   // column index with smallest |avg_gradient|
    int worst = -1;  // column index with largest |avg_gradient|
  };
  std::vector<Row> rows;
};

// Pure reshaping: every input summary lands in exactly one cell.
ReportTable aggregate(const std::vector<GradientSummary>& summaries,
                      std::string_view metric);

// "-0.004 (±0.003)", three decimals
std::string format_cell(const GradientSummary& summary);

// Aligned plain-text table; the per-row best cell is suffixed '*' and the
// worst '!' (documented in the README).
std::string render_text_table(const ReportTable& table);

// dataset,model,lang_pair,metric,avg_gradient,std_error,n_documents,flag
void write_report_csv(std::ostream& out, const ReportTable& table);

void write_gradient_csv(std::ostream& out,
                        const std::vector<GradientSummary>& summaries);

// Mean and standard error of a metric across documents at each checkpoint;
// one file per (metric, group) feeds any external plotting tool.
struct PlotPoint {
  int iteration = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  int n = 0;
};
std::vector<PlotPoint> plot_points(const SeriesSet& series);
void write_plot_csv(std::ostream& out, const std::vector<PlotPoint>& points);

}  // namespace relay::analysis
