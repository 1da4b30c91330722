// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "relay/chain/types.hpp"
#include "relay/run/config.hpp"

namespace relay::run {

// Loads documents from a JSONL file (one {"id"?, "text"} object per line;
// missing ids become line-NNNNNN) or a directory of .txt files (file stem
// becomes the id). Filters to word_count within [min_words, max_words],
// samples sample_n uniformly without replacement using the corpus seed, and
// returns the sample ordered by id. Deterministic: the same corpus and seed
// always select the same documents.
std::vector<chain::Document> load_corpus(const CorpusConfig& config);

}  // namespace relay::run
