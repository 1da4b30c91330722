#include <doctest.h>

#include <cmath>

#include "oracle/mini_corpus.hpp"
#include "oracle/oracle_metrics.hpp"
#include "relay/core/error.hpp"
#include "relay/core/rng.hpp"
#include "relay/metrics/metrics.hpp"

using namespace relay::metrics;
using relay::Error;

namespace {

TokenSequence toks(std::initializer_list<const char*> words) {
  TokenSequence out;
  for (const char* w : words) out.emplace_back(w);
  return out;
}

TokenSequence random_tokens(relay::Rng& rng, std::size_t max_len) {
  static const char* pool[] = {"the", "cat", "sat",   "on",    "mat",  "dog",
                               "ran", "a",   "house", "green", "river"};
  TokenSequence out;
  const std::size_t len = 1 + rng.uniform_below(max_len);
  for (std::size_t i = 0; i < len; ++i)
    out.emplace_back(pool[rng.uniform_below(std::size(pool))]);
  return out;
}

}  // namespace

TEST_CASE("bleu: hand-counted example") {
  const TokenSequence cand = toks({"the", "cat", "sat", "on", "the", "mat"});
  const TokenSequence ref = toks({"the", "cat", "is", "on", "the", "mat"});
  const MetricScore s = bleu(cand, ref);
  // unsmoothed clipped counts: p1=5/6, p2=3/5, p3=1/4, p4=0/3
  CHECK(s.components.at("match_1") == 5);
  CHECK(s.components.at("total_1") == 6);
  CHECK(s.components.at("match_2") == 3);
  CHECK(s.components.at("total_2") == 5);
  CHECK(s.components.at("match_3") == 1);
  CHECK(s.components.at("total_3") == 4);
  CHECK(s.components.at("match_4") == 0);
  CHECK(s.components.at("total_4") == 3);
  CHECK(s.components.at("bp") == 1.0);
  // add-one smoothing turns p4 into 1/4; geometric mean of
  // (5/6, 3/5, 1/4, 1/4) is (1/32)^(1/4) = 2^(-5/4)
  CHECK(s.value == doctest::Approx(std::pow(2.0, -1.25)).epsilon(1e-12));
}

TEST_CASE("bleu: identity and degenerate cases") {
  const TokenSequence x = toks({"a", "small", "cat"});
  CHECK(bleu(x, x).value == 1.0);  // short input still scores exactly 1
  CHECK(bleu(toks({"hi"}), toks({"hi"})).value == 1.0);
  CHECK(bleu({}, x).value == 0.0);  // empty candidate
  CHECK(bleu(toks({"dog"}), toks({"cat"})).value == 0.0);  // p1 = 0
  CHECK_THROWS_AS(bleu(x, {}), Error);  // empty reference
}

TEST_CASE("bleu: brevity penalty fires only when candidate is shorter") {
  const TokenSequence ref = toks({"one", "two", "three", "four"});
  const MetricScore shorter = bleu(toks({"one", "two"}), ref);
  CHECK(shorter.components.at("bp") == doctest::Approx(std::exp(1.0 - 2.0)));
  const MetricScore longer = bleu(toks({"one", "two", "three", "four", "five"}), ref);
  CHECK(longer.components.at("bp") == 1.0);
}

TEST_CASE("rouge1: hand-counted example") {
  const MetricScore s = rouge1(toks({"the", "cat", "sat"}),
                               toks({"the", "cat", "sat", "on", "the", "mat"}));
  CHECK(s.components.at("precision") == 1.0);
  CHECK(s.components.at("recall") == doctest::Approx(0.5));
  CHECK(s.value == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("rouge1: identity, disjoint, empty") {
  const TokenSequence x = toks({"a", "b", "c"});
  CHECK(rouge1(x, x).value == 1.0);
  CHECK(rouge1(toks({"p", "q"}), toks({"r", "s"})).value == 0.0);
  CHECK(rouge1({}, x).value == 0.0);
  CHECK_THROWS_AS(rouge1(x, {}), Error);
}

TEST_CASE("rouge1: clipping caps repeated candidate tokens") {
  // candidate repeats 'the' 4x but the reference has only 2
  const MetricScore s =
      rouge1(toks({"the", "the", "the", "the"}), toks({"the", "cat", "the", "dog"}));
  CHECK(s.components.at("overlap") == 2);
}

TEST_CASE("chrf: identity, disjoint, and whitespace normalization") {
  CHECK(chrf("same text", "same text").value == 1.0);
  CHECK(chrf("abc", "xyz").value == 0.0);
  CHECK(chrf("spaced   out\ttext", "spaced out text").value == 1.0);
  CHECK_THROWS_AS(chrf("x", "   "), Error);
}

TEST_CASE("chrf: cat vs cap per-order counts") {
  const MetricScore s = chrf("cat", "cap", 3);
  CHECK(s.components.at("p1") == doctest::Approx(2.0 / 3.0));
  CHECK(s.components.at("r1") == doctest::Approx(2.0 / 3.0));
  CHECK(s.components.at("p2") == doctest::Approx(0.5));
  CHECK(s.components.at("p3") == 0.0);
  // averaged P = R = (2/3 + 1/2 + 0) / 3 = 7/18, and F2 of equal P,R is P
  CHECK(s.value == doctest::Approx(7.0 / 18.0).epsilon(1e-12));
  // orders above the text length are skipped, not zero-filled
  CHECK(chrf("cat", "cap", 6).value == doctest::Approx(7.0 / 18.0).epsilon(1e-12));
}

TEST_CASE("meteor: identity penalty formula") {
  const TokenSequence x = toks({"one", "two", "three"});
  const MetricScore s = meteor(x, x);
  CHECK(s.components.at("matches") == 3);
  CHECK(s.components.at("chunks") == 1);
  // F_mean = 1, penalty = 0.5*(1/3)^3 -> score = 1 - 1/54
  CHECK(s.value == doctest::Approx(1.0 - 1.0 / 54.0).epsilon(1e-12));
}

TEST_CASE("meteor: stem-stage match") {
  const MetricScore s = meteor(toks({"running"}), toks({"runs"}));
  CHECK(s.components.at("matches") == 1);  // porter: running/runs -> run
  CHECK(s.value > 0.0);
}

TEST_CASE("meteor: disjoint and empty") {
  CHECK(meteor(toks({"alpha"}), toks({"omega"})).value == 0.0);
  CHECK(meteor({}, toks({"a"})).value == 0.0);
  CHECK_THROWS_AS(meteor(toks({"a"}), {}), Error);
}

TEST_CASE("meteor: reordering splits chunks") {
  // every token matches but in two blocks
  const MetricScore s = meteor(toks({"c", "d", "a", "b"}), toks({"a", "b", "c", "d"}));
  CHECK(s.components.at("matches") == 4);
  CHECK(s.components.at("chunks") == 2);
}

TEST_CASE("score_pair dispatch and external metrics") {
  CHECK(score_pair("rouge1", "same words here", "same words here").value == 1.0);
  CHECK(score_pair("bleu", "d0 text body", "d0 text body").value == 1.0);
  CHECK_THROWS_WITH_AS(score_pair("bleurt", "a", "b"),
                       doctest::Contains("external metric not ingested"), Error);
  CHECK_THROWS_WITH_AS(score_pair("bertscore", "a", "b"),
                       doctest::Contains("external metric not ingested"), Error);
  CHECK_THROWS_AS(score_pair("factscore", "a", "b"), Error);
  CHECK_THROWS_WITH_AS(score_pair("nope", "a", "b"),
                       doctest::Contains("unknown metric"), Error);
}

TEST_CASE("boundedness: every metric stays in [0,1] on random inputs") {
  relay::Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const TokenSequence cand = random_tokens(rng, 14);
    const TokenSequence ref = random_tokens(rng, 14);
    for (double v : {bleu(cand, ref).value, rouge1(cand, ref).value,
                     meteor(cand, ref).value,
                     chrf(join_tokens(cand), join_tokens(ref)).value}) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
  }
}

TEST_CASE("rouge1 monotone damage: replacing matched words never raises F1") {
  relay::Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    TokenSequence cand = random_tokens(rng, 12);
    const TokenSequence ref = cand;
    double prev = rouge1(cand, ref).value;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      cand[i] = "zzq" + std::to_string(i);  // out-of-vocabulary
      const double now = rouge1(cand, ref).value;
      REQUIRE(now <= prev + 1e-15);
      prev = now;
    }
  }
}

TEST_CASE("oracle equivalence over the frozen mini-corpus") {
  for (const auto& [cand_text, ref_text] : oracle::kMiniCorpus) {
    const TokenSequence cand = tokenize(cand_text);
    const TokenSequence ref = tokenize(ref_text);

    // bleu: counts exact, value to 1e-9
    const auto bo = oracle::bleu(cand, ref);
    const MetricScore bs = bleu(cand, ref);
    for (const auto& [n, counts] : bo.counts) {
      REQUIRE(bs.components.at("match_" + std::to_string(n)) == counts.match);
      REQUIRE(bs.components.at("total_" + std::to_string(n)) == counts.total);
    }
    REQUIRE(bs.value == doctest::Approx(bo.value).epsilon(1e-9));

    const auto ro = oracle::rouge1(cand, ref);
    const MetricScore rs = rouge1(cand, ref);
    REQUIRE(rs.components.at("overlap") == ro.overlap);
    REQUIRE(rs.components.at("precision") == ro.precision);
    REQUIRE(rs.components.at("recall") == ro.recall);
    REQUIRE(rs.value == doctest::Approx(ro.f1).epsilon(1e-9));

    const auto co = oracle::chrf(std::string(cand_text), std::string(ref_text));
    const MetricScore cs = chrf(cand_text, ref_text);
    for (const auto& [n, p] : co.precisions)
      REQUIRE(cs.components.at("p" + std::to_string(n)) == p);
    for (const auto& [n, r] : co.recalls)
      REQUIRE(cs.components.at("r" + std::to_string(n)) == r);
    REQUIRE(cs.value == doctest::Approx(co.value).epsilon(1e-9));

    const auto mo = oracle::meteor(cand, ref);
    const MetricScore ms = meteor(cand, ref);
    REQUIRE(ms.components.at("matches") == mo.matches);
    if (mo.matches > 0) REQUIRE(ms.components.at("chunks") == mo.chunks);
    REQUIRE(ms.value == doctest::Approx(mo.value).epsilon(1e-9));
  }
}
