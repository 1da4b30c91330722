// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
//
// Times the serial scoring reference against the OpenMP kernel on a
// synthetic corpus. Usage: relay_bench_scoring [docs] [words] [threads]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "relay/core/rng.hpp"
#include "relay/run/scoring.hpp"

namespace {

std::string synth_doc(relay::Rng& rng, int words) {
  std::string text;
  for (int i = 0; i < words; ++i) {
    if (i) text.push_back(' ');
    text += "w" + std::to_string(rng.uniform_below(4000));
  }
  return text;
}

std::string perturb(relay::Rng& rng, const std::string& text, double rate) {
  std::string out;
  std::size_t start = 0;
  bool first = true;
  while (start <= text.size()) {
    std::size_t end = text.find(' ', start);
    if (end == std::string::npos) end = text.size();
    std::string word = text.substr(start, end - start);
    if (rng.next_double() < rate) word = "x" + std::to_string(rng.uniform_below(4000));
    if (!first) out.push_back(' ');
    out += word;
    first = false;
    start = end + 1;
  }
  return out;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  const int docs = argc > 1 ? std::atoi(argv[1]) : 150;
  const int words = argc > 2 ? std::atoi(argv[2]) : 150;
  const int threads = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();

  relay::Rng rng(42);
  const std::vector<int> checkpoints = {0, 3, 6, 10, 15, 20, 30, 40, 50, 65, 80, 100};
  std::vector<relay::run::ScoreJob> jobs;
  for (int d = 0; d < docs; ++d) {
    relay::run::ScoreJob job;
    job.doc_id = "doc-" + std::to_string(d);
    const std::string original = synth_doc(rng, words);
    for (int t : checkpoints) {
      // drift grows with t, roughly like a decaying chain
      const double rate = 1.0 - std::pow(0.98, t);
      job.texts.emplace_back(t, t == 0 ? original : perturb(rng, original, rate));
    }
    jobs.push_back(std::move(job));
  }
  const std::vector<std::string> metrics = {"bleu", "rouge1", "chrf", "meteor"};

  std::printf("scoring %d docs x %zu checkpoints x %zu metrics\n", docs,
              checkpoints.size(), metrics.size());

  auto start = std::chrono::steady_clock::now();
  const auto serial = relay::run::score_jobs_serial(jobs, metrics);
  const double serial_ms = ms_since(start);
  std::printf("serial:   %8.1f ms\n", serial_ms);

  start = std::chrono::steady_clock::now();
  const auto parallel = relay::run::score_jobs_parallel(jobs, metrics, threads);
  const double parallel_ms = ms_since(start);
  std::printf("parallel: %8.1f ms  (%d threads, speedup %.2fx)\n", parallel_ms,
              threads, serial_ms / parallel_ms);

  // sanity: the kernel must reproduce the reference bit for bit
  if (serial.size() != parallel.size()) {
    std::printf("MISMATCH: result sizes differ\n");
    return 1;
  }
  for (std::size_t i = 0; i < serial.size(); ++i) {
    if (serial[i].points != parallel[i].points) {
      std::printf("MISMATCH: series %zu differs\n", i);
      return 1;
    }
  }
  std::printf("serial and parallel results identical\n");
  return 0;
}
