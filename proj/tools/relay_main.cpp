// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
//
// Subcommands:
//   run <config>            execute an experiment end to end
//   resume <run-dir>        continue an interrupted run
//   score <run-dir>         re-score existing traces (no generation)
//   report <run-dir>        rebuild tables and plot data from series files
//   ingest-scores <csv>     load externally computed metric scores
//   validate <config>       parse + validate a config and exit

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "relay/run/orchestrator.hpp"

namespace {

int map_error(const relay::Error& e) {
  std::cerr << "error: " << e.what() << '\n';
  switch (e.kind()) {
    case relay::ErrorKind::validation:
    case relay::ErrorKind::parse:
      return 1;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relay: iterative generation chains with native drift metrics"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::optional<int> parallel;
  bool dry_run = false;
  app.add_option("--seed", seed,
                 "override the corpus seed and every chain seed");
  app.add_option("--parallel", parallel, "max concurrent document chains");
  app.add_flag("--dry-run", dry_run, "plan without executing");

  std::string run_config;
  auto* cmd_run = app.add_subcommand("run", "execute an experiment config");
  cmd_run->add_option("config", run_config, "experiment config (TOML)")
      ->required()
      ->check(CLI::ExistingFile);

  std::string resume_path;
  auto* cmd_resume =
      app.add_subcommand("resume", "continue an interrupted run");
  cmd_resume->add_option("run", resume_path, "run directory or manifest.json")
      ->required()
      ->check(CLI::ExistingPath);

  std::string score_dir;
  std::vector<std::string> score_metrics;
  auto* cmd_score = app.add_subcommand(
      "score", "re-score stored traces without regenerating");
  cmd_score->add_option("run", score_dir, "run directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd_score
      ->add_option("--metrics", score_metrics,
                   "metric ids (default: the config's metric list)")
      ->delimiter(',');

  std::string report_dir;
  auto* cmd_report =
      app.add_subcommand("report", "rebuild gradient tables and plot CSVs");
  cmd_report->add_option("run", report_dir, "run directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  std::string ingest_csv, ingest_run, ingest_chain;
  bool ingest_clamp = false;
  auto* cmd_ingest = app.add_subcommand(
      "ingest-scores", "load externally computed scores (doc_id,metric,iteration,value)");
  cmd_ingest->add_option("csv", ingest_csv, "score CSV file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_ingest->add_option("--run", ingest_run, "run directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd_ingest->add_option("--chain", ingest_chain,
                         "chain id (defaults to the run's only chain)");
  cmd_ingest->add_flag("--clamp", ingest_clamp, "clamp values into [0,1]");

  std::string validate_config;
  auto* cmd_validate =
      app.add_subcommand("validate", "check a config and exit");
  cmd_validate->add_option("config", validate_config, "experiment config (TOML)")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  relay::run::RunOptions options;
  options.dry_run = dry_run;
  options.seed_override = seed;
  options.parallel_override = parallel;
  options.log = &std::cout;

  try {
    if (*cmd_run) {
      auto config = relay::run::load_config(run_config);
      const auto outcome = relay::run::run_experiment(std::move(config), options);
      if (!outcome.dry_run)
        std::cout << "run finished: " << outcome.docs_ok << "/" << outcome.docs_total
                  << " document chains ok, " << outcome.docs_quarantined
                  << " quarantined\n";
      return outcome.exit_code();
    }
    if (*cmd_resume) {
      const auto outcome = relay::run::resume_run(resume_path, options);
      std::cout << "resume finished: " << outcome.docs_ok << "/"
                << outcome.docs_total << " document chains ok, "
                << outcome.docs_quarantined << " quarantined\n";
      return outcome.exit_code();
    }
    if (*cmd_score) {
      relay::run::score_run(score_dir, score_metrics, options);
      return 0;
    }
    if (*cmd_report) {
      relay::run::report_run(report_dir, options);
      return 0;
    }
    if (*cmd_ingest) {
      relay::run::ingest_scores_into_run(ingest_run, ingest_csv, ingest_chain,
                                         ingest_clamp, options);
      return 0;
    }
    if (*cmd_validate) {
      relay::run::load_config(validate_config);
      std::cout << "config ok\n";
      return 0;
    }
  } catch (const relay::Error& e) {
    return map_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
