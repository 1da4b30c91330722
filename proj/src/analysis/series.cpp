// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/analysis/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "relay/core/error.hpp"
#include "relay/metrics/metrics.hpp"

namespace relay::analysis {

void MetricSeries::validate() const {
  if (metric.empty())
    throw Error(ErrorKind::validation, "series metric id must be non-empty");
  if (points.empty())
    throw Error(ErrorKind::validation,
                "series " + doc_id + "/" + metric + " has no points");
  if (points.front().first != 0)
    throw Error(ErrorKind::validation,
                "series " + doc_id + "/" + metric + " must include iteration 0");
  int prev = -1;
  for (const auto& [t, v] : points) {
    if (t <= prev)
      throw Error(ErrorKind::validation,
                  "series " + doc_id + "/" + metric +
                      " iterations must be strictly increasing (at " +
                      std::to_string(t) + ")");
    prev = t;
    if (!std::isfinite(v))
      throw Error(ErrorKind::validation,
                  "series " + doc_id + "/" + metric + " has a non-finite value");
    if (bounded && (v < 0.0 || v > 1.0))
      throw Error(ErrorKind::validation,
                  "series " + doc_id + "/" + metric + " value " +
                      format_double(v) + " outside [0,1] at iteration " +
                      std::to_string(t));
  }
}

const std::string* CheckpointTexts::text_at(int t) const {
  for (const auto& [iter, text] : texts)
    if (iter == t) return &text;
  return nullptr;
}

MetricSeries series_from_trace(const CheckpointTexts& trace, std::string_view metric,
                               const std::vector<int>& checkpoints,
                               const PairScorer& scorer) {
  const std::string* original = trace.text_at(0);
  if (!original)
    throw Error(ErrorKind::contract,
                "trace for document '" + trace.doc_id + "' missing iteration 0");
  MetricSeries series;
  series.doc_id = trace.doc_id;
  series.metric = std::string(metric);
  for (int t : checkpoints) {
    const std::string* text = trace.text_at(t);
    if (!text)
      throw Error(ErrorKind::contract, "trace for document '" + trace.doc_id +
                                           "' missing iteration " + std::to_string(t));
    const double value =
        scorer ? scorer(metric, *text, *original)
               : metrics::score_pair(metric, *text, *original).value;
    series.points.emplace_back(t, value);
  }
  series.validate();
  return series;
}

std::string format_double(double v) {
  char buf[40];
  // %.17g guarantees an exact strtod round trip for any finite double
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_series_csv(std::ostream& out, const SeriesSet& series) {
  out << "doc_id,metric,iteration,value\n";
  SeriesSet sorted = series;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::tie(a.metric, a.doc_id) < std::tie(b.metric, b.doc_id);
  });
  for (const auto& s : sorted) {
    for (const auto& [t, v] : s.points)
      out << s.doc_id << ',' << s.metric << ',' << t << ',' << format_double(v)
          << '\n';
  }
}

SeriesSet read_series_csv(std::istream& in, bool clamp) {
  std::string line;
  std::size_t line_no = 0;

  const auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorKind::parse,
                "scores CSV line " + std::to_string(line_no) + ": " + what);
  };

  if (!std::getline(in, line)) throw Error(ErrorKind::parse, "scores CSV is empty");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "doc_id,metric,iteration,value")
    fail("expected header 'doc_id,metric,iteration,value', got '" + line + "'");

  std::map<std::pair<std::string, std::string>, MetricSeries> by_key;
  std::set<std::tuple<std::string, std::string, int>> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4)
      fail("expected 4 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty()) fail("doc_id must be non-empty");
    if (fields[1].empty()) fail("metric must be non-empty");

    char* end = nullptr;
    const long t = std::strtol(fields[2].c_str(), &end, 10);
    if (end == fields[2].c_str() || *end != '\0' || t < 0)
      fail("iteration must be a non-negative integer, got '" + fields[2] + "'");
    end = nullptr;
    double v = std::strtod(fields[3].c_str(), &end);
    if (end == fields[3].c_str() || *end != '\0' || !std::isfinite(v))
      fail("value must be a finite real, got '" + fields[3] + "'");

    if (!seen.insert({fields[0], fields[1], static_cast<int>(t)}).second)
      fail("duplicate point (" + fields[0] + ", " + fields[1] + ", " +
           fields[2] + ")");

    if (clamp) v = std::clamp(v, 0.0, 1.0);
    MetricSeries& series = by_key[{fields[0], fields[1]}];
    if (series.points.empty()) {
      series.doc_id = fields[0];
      series.metric = fields[1];
    }
    if (v < 0.0 || v > 1.0) series.bounded = false;
    series.points.emplace_back(static_cast<int>(t), v);
  }

  SeriesSet out;
  out.reserve(by_key.size());
  for (auto& [key, series] : by_key) {
    std::sort(series.points.begin(), series.points.end());
    series.validate();
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace relay::analysis
