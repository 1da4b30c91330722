// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "relay/core/error.hpp"
#include "relay/core/strings.hpp"
#include "relay/metrics/porter.hpp"

namespace relay::metrics {

namespace {

void require_reference(bool non_empty, std::string_view metric) {
  if (!non_empty)
    throw Error(ErrorKind::contract,
                std::string(metric) + ": reference must be non-empty");
}

// Token n-grams keyed by joined tokens; \x1f cannot occur inside a token
// because the tokenizer splits on whitespace only and \x1f is stripped by
// none of its rules, so the join is collision-free for real text.
std::unordered_map<std::string, int> token_ngrams(const TokenSequence& toks,
                                                  int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(toks.size()) < n) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= toks.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key += toks[i + static_cast<std::size_t>(k)];
    }
    ++counts[key];
  }
  return counts;
}

struct ClippedCount {
  long long match = 0;
  long long total = 0;
};

ClippedCount clipped_overlap(const std::unordered_map<std::string, int>& cand,
                             const std::unordered_map<std::string, int>& ref) {
  ClippedCount c;
  for (const auto& [gram, count] : cand) {
    c.total += count;
    auto it = ref.find(gram);
    if (it != ref.end()) c.match += std::min(count, it->second);
  }
  return c;
}

struct U32Hash {
  std::size_t operator()(const std::u32string& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (char32_t c : s) {
      h ^= static_cast<std::size_t>(c);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

MetricScore bleu(const TokenSequence& candidate, const TokenSequence& reference,
                 int max_n) {
  require_reference(!reference.empty(), "bleu");
  MetricScore score;
  score.metric = "bleu";

  double log_sum = 0.0;
  int orders_used = 0;
  bool zero_unigram = false;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand = token_ngrams(candidate, n);
    const auto ref = token_ngrams(reference, n);
    const ClippedCount c = clipped_overlap(cand, ref);
    if (c.total == 0) continue;  // candidate too short for this order
    score.components["match_" + std::to_string(n)] = static_cast<double>(c.match);
    score.components["total_" + std::to_string(n)] = static_cast<double>(c.total);
    double p;
    if (c.match == 0 && n >= 2) {
      p = static_cast<double>(c.match + 1) / static_cast<double>(c.total + 1);
    } else {
      p = static_cast<double>(c.match) / static_cast<double>(c.total);
    }
    if (p == 0.0) zero_unigram = true;
    else log_sum += std::log(p);
    ++orders_used;
  }

  const auto c_len = static_cast<double>(candidate.size());
  const auto r_len = static_cast<double>(reference.size());
  if (orders_used == 0 || zero_unigram || candidate.empty()) {
    score.components["bp"] = 0.0;
    score.value = 0.0;
    return score;
  }
  const double bp = c_len < r_len ? std::exp(1.0 - r_len / c_len) : 1.0;
  score.components["bp"] = bp;
  score.value = bp * std::exp(log_sum / orders_used);
  return score;
}

MetricScore rouge1(const TokenSequence& candidate, const TokenSequence& reference) {
  require_reference(!reference.empty(), "rouge1");
  MetricScore score;
  score.metric = "rouge1";
  const auto cand = token_ngrams(candidate, 1);
  const auto ref = token_ngrams(reference, 1);
  const ClippedCount c = clipped_overlap(cand, ref);
  const double precision =
      candidate.empty() ? 0.0
                        : static_cast<double>(c.match) / static_cast<double>(candidate.size());
  const double recall =
      static_cast<double>(c.match) / static_cast<double>(reference.size());
  score.components["overlap"] = static_cast<double>(c.match);
  score.components["precision"] = precision;
  score.components["recall"] = recall;
  score.value = (precision + recall) == 0.0
                    ? 0.0
                    : 2.0 * precision * recall / (precision + recall);
  return score;
}

MetricScore chrf(std::string_view candidate_text, std::string_view reference_text,
                 int max_n, double beta) {
  require_reference(!trim(reference_text).empty(), "chrf");
  MetricScore score;
  score.metric = "chrf";

  const std::u32string cand = decode_utf8(collapse_whitespace(candidate_text));
  const std::u32string ref = decode_utf8(collapse_whitespace(reference_text));

  const auto grams = [](const std::u32string& s, int n) {
    std::unordered_map<std::u32string, int, U32Hash> counts;
    if (static_cast<int>(s.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= s.size(); ++i)
      ++counts[s.substr(i, static_cast<std::size_t>(n))];
    return counts;
  };

  double precision_sum = 0.0;
  double recall_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= max_n; ++n) {
    const auto rg = grams(ref, n);
    long long ref_total = 0;
    for (const auto& [g, c] : rg) ref_total += c;
    if (ref_total == 0) continue;  // reference too short for this order
    const auto cg = grams(cand, n);
    long long cand_total = 0;
    long long match = 0;
    for (const auto& [g, c] : cg) {
      cand_total += c;
      auto it = rg.find(g);
      if (it != rg.end()) match += std::min(c, it->second);
    }
    const double p = cand_total == 0
                         ? 0.0
                         : static_cast<double>(match) / static_cast<double>(cand_total);
    const double r = static_cast<double>(match) / static_cast<double>(ref_total);
    score.components["p" + std::to_string(n)] = p;
    score.components["r" + std::to_string(n)] = r;
    precision_sum += p;
    recall_sum += r;
    ++orders;
  }
  if (orders == 0) {
    score.value = 0.0;
    return score;
  }
  const double avg_p = precision_sum / orders;
  const double avg_r = recall_sum / orders;
  score.components["avg_precision"] = avg_p;
  score.components["avg_recall"] = avg_r;
  const double b2 = beta * beta;
  const double denom = b2 * avg_p + avg_r;
  score.value = denom == 0.0 ? 0.0 : (1.0 + b2) * avg_p * avg_r / denom;
  return score;
}

MetricScore meteor(const TokenSequence& candidate, const TokenSequence& reference) {
  require_reference(!reference.empty(), "meteor");
  MetricScore score;
  score.metric = "meteor";

  const std::size_t cn = candidate.size();
  const std::size_t rn = reference.size();
  // alignment[c] = matched reference index
  std::vector<int> alignment(cn, -1);
  std::vector<bool> ref_used(rn, false);

  // stage 1: exact surface match, greedy in candidate order
  for (std::size_t c = 0; c < cn; ++c) {
    for (std::size_t r = 0; r < rn; ++r) {
      if (!ref_used[r] && candidate[c] == reference[r]) {
        alignment[c] = static_cast<int>(r);
        ref_used[r] = true;
        break;
      }
    }
  }
  // stage 2: stem match over what is left
  std::vector<std::string> cand_stems(cn), ref_stems(rn);
  for (std::size_t c = 0; c < cn; ++c) cand_stems[c] = porter_stem(candidate[c]);
  for (std::size_t r = 0; r < rn; ++r) ref_stems[r] = porter_stem(reference[r]);
  for (std::size_t c = 0; c < cn; ++c) {
    if (alignment[c] != -1) continue;
    for (std::size_t r = 0; r < rn; ++r) {
      if (!ref_used[r] && cand_stems[c] == ref_stems[r]) {
        alignment[c] = static_cast<int>(r);
        ref_used[r] = true;
        break;
      }
    }
  }

  int matches = 0;
  for (std::size_t c = 0; c < cn; ++c)
    if (alignment[c] != -1) ++matches;
  score.components["matches"] = matches;
  if (matches == 0) {
    score.value = 0.0;
    return score;
  }

  // chunks: maximal runs of pairs contiguous in both sentences, scanning
  // matched pairs in candidate order
  int chunks = 0;
  int prev_c = -2, prev_r = -2;
  for (std::size_t c = 0; c < cn; ++c) {
    if (alignment[c] == -1) continue;
    if (static_cast<int>(c) != prev_c + 1 || alignment[c] != prev_r + 1) ++chunks;
    prev_c = static_cast<int>(c);
    prev_r = alignment[c];
  }

  const double m = static_cast<double>(matches);
  const double precision = m / static_cast<double>(cn);
  const double recall = m / static_cast<double>(rn);
  const double f_mean = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double ratio = static_cast<double>(chunks) / m;
  const double penalty = 0.5 * ratio * ratio * ratio;
  score.components["chunks"] = chunks;
  score.components["precision"] = precision;
  score.components["recall"] = recall;
  score.components["f_mean"] = f_mean;
  score.components["penalty"] = penalty;
  score.value = f_mean * (1.0 - penalty);
  return score;
}

bool is_native_metric(std::string_view id) {
  for (auto m : kNativeMetricIds)
    if (m == id) return true;
  return false;
}

bool is_external_metric(std::string_view id) {
  for (auto m : kExternalMetricIds)
    if (m == id) return true;
  return false;
}

bool is_known_metric(std::string_view id) {
  return is_native_metric(id) || is_external_metric(id) || id == "factscore";
}

MetricScore score_pair(std::string_view metric_id, std::string_view candidate_text,
                       std::string_view reference_text) {
  if (metric_id == "chrf") return chrf(candidate_text, reference_text);
  if (metric_id == "bleu" || metric_id == "rouge1" || metric_id == "meteor") {
    const TokenSequence cand = tokenize(candidate_text);
    const TokenSequence ref = tokenize(reference_text);
    if (metric_id == "bleu") return bleu(cand, ref);
    if (metric_id == "rouge1") return rouge1(cand, ref);
    return meteor(cand, ref);
  }
  if (is_external_metric(metric_id))
    throw Error(ErrorKind::contract, "external metric not ingested: '" +
                                         std::string(metric_id) +
                                         "' scores must be loaded with ingest-scores");
  if (metric_id == "factscore")
    throw Error(ErrorKind::contract,
                "factscore requires a judge backend; use the factuality pipeline");
  throw Error(ErrorKind::contract, "unknown metric id: '" + std::string(metric_id) + "'");
}

}  // namespace relay::metrics
