// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relay/chain/spec.hpp"

namespace relay::chain {

struct Hop {
  std::string from_lang;
  std::string to_lang;
  ModelSpec model;
};

// One iteration's realized operator: an ordered list of hops starting and
// ending at the source language, language-contiguous in between.
struct HopPlan {
  std::vector<Hop> hops;
};

// Pure function of (spec, doc_id, t): all randomness comes from streams
// keyed by (spec.seed, doc_id, t), so replaying any iteration of any
// document yields a byte-identical plan.
//   self_loop:    src -> bridge -> src, the pool's single model both ways
//   two_player:   same path, each hop's model drawn uniformly from the pool
//   multilingual: src -> b1 -> ... -> b(h-1) -> src over an ordered sample
//                 of distinct bridges, one uniform model draw per hop
//   rephrase:     a single src -> src hop
HopPlan plan_iteration(const ChainSpec& spec, std::string_view doc_id, int t);

// Iteration indices at which a chain is scored. The default grid is
// {0,3,6,10,15,20,30,40,50,65,80,100} clipped to [0,n], with n always
// included so the terminal state is evaluated.
std::vector<int> checkpoint_schedule(int n);
// Custom grid variant; clips to [0,n] and forces 0 and n membership.
std::vector<int> checkpoint_schedule(int n, const std::vector<int>& grid);

inline const std::vector<int>& default_checkpoint_grid() {
  static const std::vector<int> grid = {0, 3, 6, 10, 15, 20, 30, 40, 50, 65, 80, 100};
  return grid;
}

}  // namespace relay::chain
