// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "relay/metrics/tokenize.hpp"

namespace relay::metrics {

struct MetricScore {
  std::string metric;
  double value = 0.0;
  // named sub-values: n-gram match/total counts, P/R, chunks, penalties
  std::map<std::string, double> components;
};

// Sentence BLEU against a single reference.
//   - clipped modified n-gram precisions p_1..p_max_n
//   - orders where the candidate has no n-grams are dropped from the mean,
//     so identical short inputs still score exactly 1
//   - add-one smoothing on any zero p_n for n >= 2 (p_1 = 0 scores 0)
//   - brevity penalty exp(1 - r/c) when c < r
// Components: match_n / total_n per order (unsmoothed counts) and bp.
MetricScore bleu(const TokenSequence& candidate, const TokenSequence& reference,
                 int max_n = 4);

// Unigram F1 with clipped overlap; components precision / recall / overlap.
MetricScore rouge1(const TokenSequence& candidate, const TokenSequence& reference);

// Character n-gram F_beta over whitespace-normalized text (codepoints, not
// bytes). Precisions and recalls are averaged arithmetically over orders
// 1..max_n, skipping orders with no reference n-grams, then combined with
// beta = 2 weighting recall.
MetricScore chrf(std::string_view candidate_text, std::string_view reference_text,
                 int max_n = 6, double beta = 2.0);

// Two-stage METEOR: exact match then Porter-stem match, both greedy in
// candidate order, each token matched at most once. No synonym stage.
//   F_mean = 10PR / (R + 9P), penalty = 0.5 * (chunks/m)^3,
//   score = F_mean * (1 - penalty), 0 when nothing matches.
// Components: matches, chunks, precision, recall, f_mean, penalty.
MetricScore meteor(const TokenSequence& candidate, const TokenSequence& reference);

inline constexpr std::string_view kNativeMetricIds[] = {"bleu", "rouge1", "chrf",
                                                        "meteor"};
// Computed outside and ingested as score files; never computed natively.
inline constexpr std::string_view kExternalMetricIds[] = {"bertscore", "bleurt"};

bool is_native_metric(std::string_view id);
bool is_external_metric(std::string_view id);
bool is_known_metric(std::string_view id);  // native + external + factscore

// Uniform dispatch by metric id over raw text. Token metrics tokenize both
// sides; chrf scores raw text. External ids and factscore are not computable
// here and raise a contract error pointing at the right pipeline.
MetricScore score_pair(std::string_view metric_id, std::string_view candidate_text,
                       std::string_view reference_text);

}  // namespace relay::metrics
