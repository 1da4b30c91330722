#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "relay/chain/plan.hpp"
#include "relay/core/error.hpp"

using namespace relay::chain;
using relay::Error;

namespace {

ModelSpec model(const std::string& id) { return {id, id, DecodingParams{}}; }

ChainSpec self_loop_fr() {
  ChainSpec spec;
  spec.id = "exp1";
  spec.bridge_langs = {"FR"};
  spec.model_pool = {model("llama")};
  spec.setup = Setup::self_loop;
  spec.seed = 42;
  return spec;
}

const LanguageRegistry& registry() {
  static const LanguageRegistry reg = LanguageRegistry::builtin();
  return reg;
}

}  // namespace

TEST_CASE("validate_spec accepts the stock setups") {
  CHECK_NOTHROW(validate_spec(self_loop_fr(), registry()));

  ChainSpec two = self_loop_fr();
  two.setup = Setup::two_player;
  two.model_pool = {model("llama"), model("mistral")};
  CHECK_NOTHROW(validate_spec(two, registry()));

  ChainSpec multi = self_loop_fr();
  multi.setup = Setup::multilingual;
  multi.bridge_langs = {"FR", "TH"};
  multi.model_pool = {model("llama"), model("mistral")};
  CHECK_NOTHROW(validate_spec(multi, registry()));

  ChainSpec rephrase = self_loop_fr();
  rephrase.task = Task::rephrase;
  rephrase.bridge_langs = {};
  rephrase.prompt_variant = PromptVariant::rephrase;
  CHECK_NOTHROW(validate_spec(rephrase, registry()));
}

TEST_CASE("validate_spec names the violated invariant") {
  ChainSpec two_bridges = self_loop_fr();
  two_bridges.bridge_langs = {"FR", "TH"};
  CHECK_THROWS_WITH_AS(validate_spec(two_bridges, registry()),
                       doctest::Contains("self_loop requires exactly 1 bridge"),
                       Error);

  ChainSpec rephrase_with_bridge = self_loop_fr();
  rephrase_with_bridge.task = Task::rephrase;
  rephrase_with_bridge.prompt_variant = PromptVariant::rephrase;
  CHECK_THROWS_WITH_AS(validate_spec(rephrase_with_bridge, registry()),
                       doctest::Contains("rephrase forbids bridge"), Error);

  ChainSpec wrong_prompt = self_loop_fr();
  wrong_prompt.task = Task::rephrase;
  wrong_prompt.bridge_langs = {};
  wrong_prompt.prompt_variant = PromptVariant::base;
  CHECK_THROWS_AS(validate_spec(wrong_prompt, registry()), Error);

  ChainSpec source_in_bridges = self_loop_fr();
  source_in_bridges.bridge_langs = {"EN"};
  CHECK_THROWS_WITH_AS(validate_spec(source_in_bridges, registry()),
                       doctest::Contains("must not appear among the bridges"),
                       Error);

  ChainSpec unknown_lang = self_loop_fr();
  unknown_lang.bridge_langs = {"XX"};
  CHECK_THROWS_WITH_AS(validate_spec(unknown_lang, registry()),
                       doctest::Contains("not in the registry"), Error);

  ChainSpec small_pool = self_loop_fr();
  small_pool.setup = Setup::two_player;
  CHECK_THROWS_WITH_AS(validate_spec(small_pool, registry()),
                       doctest::Contains("two_player requires a model pool of >= 2"),
                       Error);

  ChainSpec bad_temp = self_loop_fr();
  bad_temp.model_pool[0].decoding.temperature = -1.0;
  CHECK_THROWS_AS(validate_spec(bad_temp, registry()), Error);

  ChainSpec bad_iters = self_loop_fr();
  bad_iters.iterations_n = 0;
  CHECK_THROWS_AS(validate_spec(bad_iters, registry()), Error);
}

TEST_CASE("self_loop plan: fixed two-hop shape, single model") {
  const ChainSpec spec = self_loop_fr();
  for (int t : {1, 2, 50, 100}) {
    const HopPlan plan = plan_iteration(spec, "doc-1", t);
    REQUIRE(plan.hops.size() == 2);
    CHECK(plan.hops[0].from_lang == "EN");
    CHECK(plan.hops[0].to_lang == "FR");
    CHECK(plan.hops[1].from_lang == "FR");
    CHECK(plan.hops[1].to_lang == "EN");
    CHECK(plan.hops[0].model.id == "llama");
    CHECK(plan.hops[1].model.id == "llama");
  }
}

TEST_CASE("two_player plans replay identically for identical keys") {
  ChainSpec spec = self_loop_fr();
  spec.setup = Setup::two_player;
  spec.model_pool = {model("llama"), model("mistral")};
  for (int t : {1, 7, 99}) {
    const HopPlan a = plan_iteration(spec, "doc-3", t);
    const HopPlan b = plan_iteration(spec, "doc-3", t);
    REQUIRE(a.hops.size() == b.hops.size());
    for (std::size_t i = 0; i < a.hops.size(); ++i)
      CHECK(a.hops[i].model.id == b.hops[i].model.id);
  }
  // and 1000 replays are byte-identical in every field
  const HopPlan first = plan_iteration(spec, "doc-9", 13);
  for (int i = 0; i < 1000; ++i) {
    const HopPlan again = plan_iteration(spec, "doc-9", 13);
    REQUIRE(again.hops.size() == first.hops.size());
    for (std::size_t h = 0; h < first.hops.size(); ++h) {
      REQUIRE(again.hops[h].from_lang == first.hops[h].from_lang);
      REQUIRE(again.hops[h].to_lang == first.hops[h].to_lang);
      REQUIRE(again.hops[h].model.id == first.hops[h].model.id);
    }
  }
}

TEST_CASE("two_player: resample_models=false freezes the pairing") {
  ChainSpec spec = self_loop_fr();
  spec.setup = Setup::two_player;
  spec.model_pool = {model("llama"), model("mistral")};
  spec.resample_models = false;
  const HopPlan first = plan_iteration(spec, "doc-1", 1);
  for (int t = 2; t <= 40; ++t) {
    const HopPlan plan = plan_iteration(spec, "doc-1", t);
    CHECK(plan.hops[0].model.id == first.hops[0].model.id);
    CHECK(plan.hops[1].model.id == first.hops[1].model.id);
  }
  // with resampling on, 40 iterations of a 2-model pool vary almost surely
  spec.resample_models = true;
  std::set<std::string> seen;
  for (int t = 1; t <= 40; ++t)
    seen.insert(plan_iteration(spec, "doc-1", t).hops[0].model.id);
  CHECK(seen.size() == 2);
}

TEST_CASE("multilingual with two bridges walks both, in either order") {
  ChainSpec spec;
  spec.id = "mm1";
  spec.bridge_langs = {"FR", "TH"};
  spec.model_pool = {model("llama"), model("mistral")};
  spec.setup = Setup::multilingual;
  spec.seed = 7;
  validate_spec(spec, registry());

  std::set<std::string> orders;
  for (int t = 1; t <= 60; ++t) {
    const HopPlan plan = plan_iteration(spec, "doc-1", t);
    REQUIRE(plan.hops.size() == 3);
    CHECK(plan.hops.front().from_lang == "EN");
    CHECK(plan.hops.back().to_lang == "EN");
    // language-contiguous and both bridges used exactly once
    CHECK(plan.hops[0].to_lang == plan.hops[1].from_lang);
    CHECK(plan.hops[1].to_lang == plan.hops[2].from_lang);
    CHECK(plan.hops[0].to_lang != plan.hops[1].to_lang);
    orders.insert(plan.hops[0].to_lang + plan.hops[1].to_lang);
  }
  CHECK(orders == std::set<std::string>{"FRTH", "THFR"});
}

TEST_CASE("multilingual setting-3 shape: 5 hops, each bridge once") {
  ChainSpec spec;
  spec.id = "mm3";
  spec.bridge_langs = {"FR", "TH", "ZH", "DE"};
  spec.model_pool = {model("llama"), model("mistral")};
  spec.setup = Setup::multilingual;
  spec.seed = 11;
  validate_spec(spec, registry());
  CHECK(spec.hops_per_iteration() == 5);

  for (int t = 1; t <= 200; ++t) {
    const HopPlan plan = plan_iteration(spec, "doc-2", t);
    REQUIRE(plan.hops.size() == 5);
    CHECK(plan.hops.front().from_lang == "EN");
    CHECK(plan.hops.back().to_lang == "EN");
    std::set<std::string> bridges;
    for (std::size_t h = 0; h + 1 < plan.hops.size(); ++h)
      bridges.insert(plan.hops[h].to_lang);
    CHECK(bridges == std::set<std::string>{"FR", "TH", "ZH", "DE"});
  }
}

TEST_CASE("rephrase plans are a single source->source hop") {
  ChainSpec spec;
  spec.id = "rp";
  spec.task = Task::rephrase;
  spec.prompt_variant = PromptVariant::rephrase;
  spec.model_pool = {model("llama")};
  validate_spec(spec, registry());
  const HopPlan plan = plan_iteration(spec, "doc-1", 5);
  REQUIRE(plan.hops.size() == 1);
  CHECK(plan.hops[0].from_lang == "EN");
  CHECK(plan.hops[0].to_lang == "EN");
}

TEST_CASE("two_player model draws are near-uniform per slot") {
  ChainSpec spec = self_loop_fr();
  spec.setup = Setup::two_player;
  spec.model_pool = {model("llama"), model("mistral")};
  const int trials = 10000;
  std::map<std::string, int> slot0, slot1;
  for (int t = 1; t <= trials; ++t) {
    const HopPlan plan = plan_iteration(spec, "uniformity-doc", t);
    ++slot0[plan.hops[0].model.id];
    ++slot1[plan.hops[1].model.id];
  }
  // 3 sigma around trials/2 for a fair coin
  const double sigma = std::sqrt(trials * 0.25);
  for (const auto* slot : {&slot0, &slot1}) {
    for (const auto& [id, count] : *slot)
      CHECK(std::abs(count - trials / 2.0) <= 3.0 * sigma);
  }
}

TEST_CASE("checkpoint_schedule: default grid") {
  const std::vector<int> full = checkpoint_schedule(100);
  CHECK(full == std::vector<int>{0, 3, 6, 10, 15, 20, 30, 40, 50, 65, 80, 100});
  CHECK(checkpoint_schedule(5) == std::vector<int>{0, 3, 5});
  CHECK(checkpoint_schedule(1) == std::vector<int>{0, 1});
  CHECK(checkpoint_schedule(20) == std::vector<int>{0, 3, 6, 10, 15, 20});
  CHECK(checkpoint_schedule(25) == std::vector<int>{0, 3, 6, 10, 15, 20, 25});
  CHECK_THROWS_AS(checkpoint_schedule(0), Error);
}

TEST_CASE("checkpoint_schedule: override keeps 0 and n") {
  CHECK(checkpoint_schedule(50, {10, 20, 30}) == std::vector<int>{0, 10, 20, 30, 50});
  CHECK(checkpoint_schedule(10, {4, 80}) == std::vector<int>{0, 4, 10});
  CHECK(checkpoint_schedule(10, {0, 10}) == std::vector<int>{0, 10});
}
