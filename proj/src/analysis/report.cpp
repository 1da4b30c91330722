// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/analysis/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "relay/core/error.hpp"

namespace relay::analysis {

ReportTable aggregate(const std::vector<GradientSummary>& summaries,
                      std::string_view metric) {
  ReportTable table;
  table.metric = std::string(metric);

  std::set<std::string> pairs;
  std::set<std::pair<std::string, std::string>> row_keys;
  for (const auto& s : summaries) {
    if (s.group.metric != metric) continue;
    pairs.insert(s.group.lang_pair);
    row_keys.insert({s.group.dataset, s.group.model});
  }
  table.lang_pairs.assign(pairs.begin(), pairs.end());

  std::map<std::string, std::size_t> col_of;
  for (std::size_t i = 0; i < table.lang_pairs.size(); ++i)
    col_of[table.lang_pairs[i]] = i;

  for (const auto& [dataset, model] : row_keys) {
    ReportTable::Row row;
    row.dataset = dataset;
    row.model = model;
    row.cells.resize(table.lang_pairs.size());
    for (const auto& s : summaries) {
      if (s.group.metric != metric || s.group.dataset != dataset ||
          s.group.model != model)
        continue;
      auto& cell = row.cells[col_of[s.group.lang_pair]];
      if (cell)
        throw Error(ErrorKind::contract,
                    "duplicate gradient summary for (" + dataset + ", " + model +
                        ", " + s.group.lang_pair + ", " + s.group.metric + ")");
      cell = s;
    }
    // flag best (smallest |gradient|) and worst per row; a row with no
    // spread gets only the best marker
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      if (!row.cells[i]) continue;
      const double mag = std::fabs(row.cells[i]->avg_gradient);
      if (row.best < 0 || mag < std::fabs(row.cells[static_cast<std::size_t>(row.best)]->avg_gradient))
        row.best = static_cast<int>(i);
      if (row.worst < 0 || mag > std::fabs(row.cells[static_cast<std::size_t>(row.worst)]->avg_gradient))
        row.worst = static_cast<int>(i);
    }
    if (row.worst == row.best) row.worst = -1;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_cell(const GradientSummary& summary) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f (±%.3f)", summary.avg_gradient,
                summary.std_error);
  return buf;
}

namespace {

// column width in display characters; the ± sign is 2 bytes but 1 column
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

void pad_to(std::string& line, std::size_t width, const std::string& cell) {
  line += cell;
  const std::size_t w = display_width(cell);
  for (std::size_t i = w; i < width; ++i) line.push_back(' ');
}

}  // namespace

std::string render_text_table(const ReportTable& table) {
  std::vector<std::string> headers = {"dataset", "model"};
  for (const auto& pair : table.lang_pairs) headers.push_back(pair);

  std::vector<std::vector<std::string>> cells;
  for (const auto& row : table.rows) {
    std::vector<std::string> line = {row.dataset, row.model};
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      if (!row.cells[i]) {
        line.push_back("-");
        continue;
      }
      std::string cell = format_cell(*row.cells[i]);
      if (static_cast<int>(i) == row.best) cell += "*";
      if (static_cast<int>(i) == row.worst) cell += "!";
      line.push_back(std::move(cell));
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    widths[c] = display_width(headers[c]);
    for (const auto& line : cells)
      widths[c] = std::max(widths[c], display_width(line[c]));
  }

  std::string out = "metric: " + table.metric + "\n";
  std::string header_line;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    if (c) header_line += "  ";
    pad_to(header_line, widths[c], headers[c]);
  }
  out += header_line + "\n";
  out += std::string(display_width(header_line), '-') + "\n";
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) text += "  ";
      pad_to(text, widths[c], line[c]);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
  }
  return out;
}

void write_report_csv(std::ostream& out, const ReportTable& table) {
  out << "dataset,model,lang_pair,metric,avg_gradient,std_error,n_documents,flag\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      if (!row.cells[i]) continue;
      const auto& s = *row.cells[i];
      const char* flag = "";
      if (static_cast<int>(i) == row.best) flag = "best";
      if (static_cast<int>(i) == row.worst) flag = "worst";
      out << row.dataset << ',' << row.model << ',' << table.lang_pairs[i] << ','
          << table.metric << ',' << format_double(s.avg_gradient) << ','
          << format_double(s.std_error) << ',' << s.n_documents << ',';
      if (*flag) out << '"' << flag << '"';
      out << '\n';
    }
  }
}

void write_gradient_csv(std::ostream& out,
                        const std::vector<GradientSummary>& summaries) {
  out << "dataset,model,lang_pair,metric,avg_gradient,std_error,n_documents\n";
  for (const auto& s : summaries) {
    out << s.group.dataset << ',' << s.group.model << ',' << s.group.lang_pair
        << ',' << s.group.metric << ',' << format_double(s.avg_gradient) << ','
        << format_double(s.std_error) << ',' << s.n_documents << '\n';
  }
}

std::vector<PlotPoint> plot_points(const SeriesSet& series) {
  std::map<int, std::vector<double>> by_iteration;
  for (const auto& s : series)
    for (const auto& [t, v] : s.points) by_iteration[t].push_back(v);

  std::vector<PlotPoint> out;
  for (const auto& [t, values] : by_iteration) {
    PlotPoint p;
    p.iteration = t;
    p.n = static_cast<int>(values.size());
    for (double v : values) p.mean += v;
    p.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) {
        const double d = v - p.mean;
        ss += d * d;
      }
      p.stderr_ = std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                  std::sqrt(static_cast<double>(values.size()));
    }
    out.push_back(p);
  }
  return out;
}

void write_plot_csv(std::ostream& out, const std::vector<PlotPoint>& points) {
  out << "iteration,mean,stderr\n";
  for (const auto& p : points)
    out << p.iteration << ',' << format_double(p.mean) << ','
        << format_double(p.stderr_) << '\n';
}

}  // namespace relay::analysis
