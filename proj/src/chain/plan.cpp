// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/chain/plan.hpp"

#include <algorithm>

#include "relay/core/error.hpp"
#include "relay/core/rng.hpp"

namespace relay::chain {

HopPlan plan_iteration(const ChainSpec& spec, std::string_view doc_id, int t) {
  if (t < 1)
    throw Error(ErrorKind::contract, "iteration index must be >= 1, got " +
                                         std::to_string(t));
  // Model draws optionally reuse the t=1 stream (fixed pairing per chain);
  // language draws are always per-iteration.
  const std::uint64_t model_t = spec.resample_models ? static_cast<std::uint64_t>(t) : 1u;
  Rng model_rng = stream_for(spec.seed, doc_id, model_t, "models");
  Rng lang_rng = stream_for(spec.seed, doc_id, static_cast<std::uint64_t>(t), "languages");

  const auto pick_model = [&]() -> const ModelSpec& {
    if (spec.model_pool.size() == 1) return spec.model_pool.front();
    return spec.model_pool[model_rng.uniform_below(spec.model_pool.size())];
  };

  HopPlan plan;
  if (spec.task == Task::rephrase) {
    plan.hops.push_back({spec.source_lang, spec.source_lang, pick_model()});
    return plan;
  }

  switch (spec.setup) {
    case Setup::self_loop:
    case Setup::two_player: {
      const std::string& bridge = spec.bridge_langs.front();
      const ModelSpec& out = pick_model();
      plan.hops.push_back({spec.source_lang, bridge, out});
      const ModelSpec& back = pick_model();
      plan.hops.push_back({bridge, spec.source_lang, back});
      break;
    }
    case Setup::multilingual: {
      const int hops = spec.hops_per_iteration();
      const std::size_t used = static_cast<std::size_t>(hops - 1);
      std::vector<std::string> order = spec.bridge_langs;
      lang_rng.partial_shuffle(order, used);
      order.resize(used);
      std::string from = spec.source_lang;
      for (const auto& bridge : order) {
        plan.hops.push_back({from, bridge, pick_model()});
        from = bridge;
      }
      plan.hops.push_back({from, spec.source_lang, pick_model()});
      break;
    }
  }
  return plan;
}

std::vector<int> checkpoint_schedule(int n) {
  return checkpoint_schedule(n, default_checkpoint_grid());
}

std::vector<int> checkpoint_schedule(int n, const std::vector<int>& grid) {
  if (n < 1)
    throw Error(ErrorKind::contract, "checkpoint schedule needs n >= 1");
  std::vector<int> out;
  for (int t : grid) {
    if (t >= 0 && t <= n) out.push_back(t);
  }
  out.push_back(0);
  out.push_back(n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace relay::chain
