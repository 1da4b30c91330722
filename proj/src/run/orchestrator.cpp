// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/run/orchestrator.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "relay/analysis/report.hpp"
#include "relay/chain/plan.hpp"
#include "relay/facts/factscore.hpp"
#include "relay/metrics/metrics.hpp"
#include "relay/run/corpus.hpp"
#include "relay/run/scoring.hpp"

namespace relay::run {

namespace {

using backend::Backend;
using backend::ChatBackend;
using backend::NoiseBackend;
using nlohmann::json;

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> load_replies_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::io, "cannot open replies file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_array())
    throw Error(ErrorKind::parse,
                "replies file " + path.string() + " must be a JSON array of strings");
  std::vector<std::string> replies;
  for (const auto& item : j) {
    if (!item.is_string())
      throw Error(ErrorKind::parse,
                  "replies file " + path.string() + ": entries must be strings");
    replies.push_back(item.get<std::string>());
  }
  return replies;
}

struct Backends {
  std::map<std::string, std::shared_ptr<Backend>> by_endpoint;
  std::map<std::string, std::shared_ptr<backend::ChatTransport>> transports;
  bool all_simulated = true;
  bool any_scripted = false;

  Backend& get(const chain::ModelSpec& model) const {
    return *by_endpoint.at(model.endpoint_ref);
  }
};

Backends build_backends(const ExperimentConfig& config,
                        const std::set<std::string>& endpoint_ids) {
  Backends out;
  for (const auto& id : endpoint_ids) {
    const EndpointConfig& ep = config.endpoint(id);
    if (!ep.simulated()) out.all_simulated = false;
    switch (ep.kind) {
      case EndpointConfig::Kind::noise:
        out.by_endpoint[id] = std::make_shared<NoiseBackend>(ep.noise);
        break;
      case EndpointConfig::Kind::scripted: {
        out.any_scripted = true;
        auto transport = std::make_shared<backend::ScriptedTransport>(
            load_replies_file(ep.replies_file));
        out.transports[id] = transport;
        out.by_endpoint[id] = std::make_shared<ChatBackend>(
            transport, ep.id, &config.languages);
        break;
      }
      case EndpointConfig::Kind::http: {
        auto http = std::make_shared<backend::HttpChatTransport>(ep.http);
        auto transport = std::make_shared<backend::RetryingTransport>(
            http, backend::RetryPolicy{});
        out.transports[id] = transport;
        out.by_endpoint[id] = std::make_shared<ChatBackend>(
            transport, ep.http.model, &config.languages);
        break;
      }
    }
  }
  return out;
}

std::shared_ptr<backend::ChatTransport> judge_transport(
    const ExperimentConfig& config, Backends& backends) {
  const EndpointConfig& ep = config.endpoint(config.judge_endpoint);
  auto it = backends.transports.find(ep.id);
  if (it != backends.transports.end()) return it->second;
  switch (ep.kind) {
    case EndpointConfig::Kind::scripted: {
      auto transport = std::make_shared<backend::ScriptedTransport>(
          load_replies_file(ep.replies_file));
      backends.transports[ep.id] = transport;
      return transport;
    }
    case EndpointConfig::Kind::http: {
      auto http = std::make_shared<backend::HttpChatTransport>(ep.http);
      auto transport = std::make_shared<backend::RetryingTransport>(
          http, backend::RetryPolicy{});
      backends.transports[ep.id] = transport;
      if (!ep.simulated()) backends.all_simulated = false;
      return transport;
    }
    case EndpointConfig::Kind::noise:
      throw Error(ErrorKind::validation,
                  "judge endpoint '" + ep.id + "' cannot be a noise channel");
  }
  throw Error(ErrorKind::validation, "unreachable judge endpoint kind");
}

std::filesystem::path trace_path(const std::filesystem::path& run_dir,
                                 const std::string& chain_id,
                                 const std::string& doc_id) {
  return run_dir / chain_id / (doc_id + ".jsonl");
}

std::vector<int> chain_checkpoints(const ExperimentConfig& config,
                                   const chain::ChainSpec& spec) {
  if (config.checkpoint_grid.empty())
    return chain::checkpoint_schedule(spec.iterations_n);
  return chain::checkpoint_schedule(spec.iterations_n, config.checkpoint_grid);
}

void log_line(const RunOptions& options, const std::string& line) {
  if (!options.log) return;
#pragma omp critical(relay_log)
  (*options.log) << line << '\n';
}

// Everything the scoring and analysis phases need about one chain.
struct ChainWork {
  const chain::ChainSpec* spec = nullptr;
  std::vector<int> checkpoints;
  std::vector<std::string> ok_docs;
};

void score_and_report(const ExperimentConfig& config,
                      const std::filesystem::path& run_dir,
                      const std::vector<ChainWork>& chains, int parallel,
                      const RunOptions& options, Backends* backends) {
  std::vector<std::string> native;
  bool want_factscore = false;
  std::vector<std::string> external;
  for (const auto& id : config.metric_ids) {
    if (metrics::is_native_metric(id)) native.push_back(id);
    else if (id == "factscore") want_factscore = true;
    else external.push_back(id);
  }

  std::vector<analysis::GradientSummary> summaries;

  for (const ChainWork& work : chains) {
    const chain::ChainSpec& spec = *work.spec;
    analysis::SeriesSet chain_series;

    // checkpoint texts for every surviving document
    std::vector<ScoreJob> jobs;
    for (const auto& doc_id : work.ok_docs) {
      const auto records = read_trace(trace_path(run_dir, spec.id, doc_id));
      ScoreJob job;
      job.doc_id = doc_id;
      for (int t : work.checkpoints) {
        if (static_cast<std::size_t>(t) >= records.size())
          throw Error(ErrorKind::contract,
                      "trace for document '" + doc_id + "' missing iteration " +
                          std::to_string(t));
        job.texts.emplace_back(t, records[static_cast<std::size_t>(t)].final_text);
      }
      jobs.push_back(std::move(job));
    }

    if (!native.empty() && !jobs.empty()) {
      analysis::SeriesSet scored = parallel > 1
                                       ? score_jobs_parallel(jobs, native, parallel)
                                       : score_jobs_serial(jobs, native);
      for (auto& s : scored) chain_series.push_back(std::move(s));
    }

    if (want_factscore && !jobs.empty()) {
      facts::Judge judge(judge_transport(config, *backends), config.judge_endpoint,
                         config.endpoint(config.judge_endpoint).kind ==
                                 EndpointConfig::Kind::http
                             ? config.endpoint(config.judge_endpoint).http.model
                             : config.judge_endpoint,
                         config.endpoint(config.judge_endpoint).decoding);
      for (const auto& job : jobs) {
        analysis::MetricSeries series;
        series.doc_id = job.doc_id;
        series.metric = "factscore";
        std::string transcript_lines;
        for (const auto& [t, text] : job.texts) {
          const facts::FactScoreResult result =
              judge.factscore(text, job.texts.front().second);
          series.points.emplace_back(t, result.score);
          json line;
          line["t"] = t;
          line["score"] = result.score;
          line["supported"] = result.supported;
          line["unsupported"] = result.unsupported;
          line["undecided"] = result.undecided;
          json turns = json::array();
          for (const auto& turn : result.transcript)
            turns.push_back(json{{"role", turn.role}, {"content", turn.content}});
          line["turns"] = std::move(turns);
          transcript_lines += line.dump() + "\n";
        }
        series.validate();
        chain_series.push_back(std::move(series));
        write_file_atomic(run_dir / spec.id / "judge" / (job.doc_id + ".jsonl"),
                          transcript_lines, options.kill, "judge");
      }
    }

    if (!chain_series.empty()) {
      std::ostringstream csv;
      analysis::write_series_csv(csv, chain_series);
      write_file_atomic(run_dir / spec.id / "series.csv", csv.str(), options.kill,
                        "series");
      log_line(options, "scored " + spec.id + ": " +
                            std::to_string(chain_series.size()) + " series");
    }

    // merge ingested external scores for this chain, if present
    const auto external_path = run_dir / "external_scores" / (spec.id + ".csv");
    if (std::filesystem::exists(external_path)) {
      std::ifstream in(external_path, std::ios::binary);
      for (auto& s : analysis::read_series_csv(in))
        chain_series.push_back(std::move(s));
    } else if (!external.empty()) {
      log_line(options, "note: metrics " + [&] {
        std::string ids;
        for (const auto& id : external) ids += (ids.empty() ? "" : ",") + id;
        return ids;
      }() + " need ingested scores; none found for chain " + spec.id);
    }

    // gradient summaries per metric over this chain's documents
    std::map<std::string, analysis::SeriesSet> by_metric;
    for (auto& s : chain_series) by_metric[s.metric].push_back(std::move(s));
    for (auto& [metric, series_set] : by_metric) {
      if (series_set.empty()) continue;
      std::sort(series_set.begin(), series_set.end(),
                [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
      analysis::GroupKey group{config.corpus.dataset, spec.model_label(),
                               spec.lang_pair_label(), metric};
      summaries.push_back(
          analysis::avg_gradient(series_set, group, config.estimator));

      std::ostringstream plot;
      analysis::write_plot_csv(plot, analysis::plot_points(series_set));
      write_file_atomic(run_dir / ("plot_" + metric + "_" + spec.id + ".csv"),
                        plot.str(), options.kill, "plot");
    }
  }

  if (!summaries.empty()) {
    std::sort(summaries.begin(), summaries.end(),
              [](const auto& a, const auto& b) { return a.group < b.group; });
    std::ostringstream gradients;
    analysis::write_gradient_csv(gradients, summaries);
    write_file_atomic(run_dir / "gradients.csv", gradients.str(), options.kill,
                      "gradients");

    std::set<std::string> metrics_present;
    for (const auto& s : summaries) metrics_present.insert(s.group.metric);
    for (const auto& metric : metrics_present) {
      const analysis::ReportTable table = analysis::aggregate(summaries, metric);
      write_file_atomic(run_dir / ("report_" + metric + ".txt"),
                        analysis::render_text_table(table), options.kill, "report");
      std::ostringstream csv;
      analysis::write_report_csv(csv, table);
      write_file_atomic(run_dir / ("report_" + metric + ".csv"), csv.str(),
                        options.kill, "report");
    }
  }
}

}  // namespace

RunOutcome run_experiment(ExperimentConfig config, const RunOptions& options) {
  if (config.chains.empty())
    throw Error(ErrorKind::validation, "config: at least one [[chain]] is required");
  if (config.output_dir.empty())
    throw Error(ErrorKind::validation, "config: run.output_dir is required");

  if (options.seed_override) {
    config.corpus.seed = *options.seed_override;
    for (auto& spec : config.chains) spec.seed = *options.seed_override;
  }
  if (options.parallel_override) {
    if (*options.parallel_override < 1)
      throw Error(ErrorKind::validation, "--parallel must be >= 1");
    config.parallel = *options.parallel_override;
  }

  // fail fast before touching the filesystem
  std::set<std::string> endpoint_ids;
  for (const auto& spec : config.chains) {
    chain::validate_spec(spec, config.languages);
    for (const auto& model : spec.model_pool) endpoint_ids.insert(model.endpoint_ref);
  }
  const std::vector<chain::Document> docs = load_corpus(config.corpus);

  RunOutcome outcome;
  outcome.run_dir = config.output_dir;
  outcome.docs_total = static_cast<int>(docs.size() * config.chains.size());

  if (options.dry_run) {
    outcome.dry_run = true;
    if (options.log) {
      auto& log = *options.log;
      log << "dry run: " << docs.size() << " documents x " << config.chains.size()
          << " chains\n";
      for (const auto& spec : config.chains) {
        const auto checkpoints = chain_checkpoints(config, spec);
        log << "chain " << spec.id << ": " << chain::setup_name(spec.setup) << " "
            << spec.lang_pair_label() << ", N=" << spec.iterations_n
            << ", models=" << spec.model_label() << ", checkpoints=";
        for (std::size_t i = 0; i < checkpoints.size(); ++i)
          log << (i ? "," : "") << checkpoints[i];
        log << '\n';
        const auto plan = chain::plan_iteration(spec, docs.front().id, 1);
        log << "  t=1 plan for " << docs.front().id << ":";
        for (const auto& hop : plan.hops)
          log << " " << hop.from_lang << "->" << hop.to_lang << "(" << hop.model.id
              << ")";
        log << '\n';
      }
    }
    return outcome;
  }

  const auto manifest_path = config.output_dir / "manifest.json";
  if (!options.resume && std::filesystem::exists(manifest_path))
    throw Error(ErrorKind::validation,
                config.output_dir.string() +
                    " already contains a run; use `relay resume` to continue it");

  Backends backends = build_backends(config, endpoint_ids);
  const bool judge_needed =
      std::count(config.metric_ids.begin(), config.metric_ids.end(), "factscore") > 0;
  if (judge_needed &&
      config.endpoint(config.judge_endpoint).kind == EndpointConfig::Kind::http)
    backends.all_simulated = false;

  // Wall time is recorded only when a live endpoint is involved; fully
  // simulated runs keep traces byte-identical across executions.
  const bool deterministic = backends.all_simulated;
  std::function<double()> clock;
  if (!deterministic) {
    clock = [] {
      return std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now().time_since_epoch())
          .count();
    };
  }

  std::filesystem::create_directories(config.output_dir);
  if (!options.resume)
    write_file_atomic(config.output_dir / "config.toml", config.source_text,
                      options.kill, "config");

  RunManifest manifest;
  if (options.resume && std::filesystem::exists(manifest_path)) {
    manifest = RunManifest::load(manifest_path);
    if (manifest.config_hash != config_hash(config.raw))
      throw Error(ErrorKind::validation,
                  "config hash mismatch: the run at " + config.output_dir.string() +
                      " was started from a different config");
  } else {
    manifest.config_hash = config_hash(config.raw);
    manifest.code_version = kCodeVersion;
    manifest.started_at = deterministic ? "" : iso_now();
    manifest.corpus_seed = config.corpus.seed;
    for (const auto& spec : config.chains) manifest.chain_seeds[spec.id] = spec.seed;
  }
  manifest.state = "running";
  for (const auto& spec : config.chains)
    for (const auto& doc : docs)
      if (!manifest.docs[spec.id].count(doc.id)) manifest.docs[spec.id][doc.id] = {};
  manifest.save(manifest_path, options.kill);

  struct Task {
    const chain::ChainSpec* spec;
    const chain::Document* doc;
  };
  std::vector<Task> tasks;
  for (const auto& spec : config.chains)
    for (const auto& doc : docs) tasks.push_back({&spec, &doc});

  // Scripted chain backends serve replies in call order; run those
  // single-threaded so the assignment of replies to hops is reproducible.
  int parallel = config.parallel;
  if (backends.any_scripted) parallel = 1;
  const int threads =
      std::max(1, std::min<int>(parallel, static_cast<int>(tasks.size())));

  backend::HopOptions hop_options{config.strip_prefixes};
  const backend::BackendTable table = [&](const chain::ModelSpec& model) -> Backend& {
    return backends.get(model);
  };

  std::atomic<bool> kill_flag{false};
  std::atomic<int> quarantined{0};

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long i = 0; i < static_cast<long long>(tasks.size()); ++i) {
    if (kill_flag.load()) continue;
    const Task& task = tasks[static_cast<std::size_t>(i)];
    const chain::ChainSpec& spec = *task.spec;
    const chain::Document& doc = *task.doc;

    DocStatus status;
    bool record_status = true;
    try {
      TraceWriter writer(trace_path(config.output_dir, spec.id, doc.id),
                         options.kill);
      std::size_t have = writer.load_existing();
      if (have == 0) {
        backend::IterationRecord origin;
        origin.t = 0;
        origin.final_text = doc.text;
        writer.append(origin);
        have = 1;
      }
      std::string state = writer.last_final_text();
      bool complete = true;
      for (int t = static_cast<int>(have); t <= spec.iterations_n; ++t) {
        if (kill_flag.load()) {
          complete = false;
          break;
        }
        const chain::HopPlan plan = chain::plan_iteration(spec, doc.id, t);
        backend::IterationRecord record =
            backend::run_iteration(plan, t, state, table, spec.prompt_variant,
                                   config.languages, hop_options, clock);
        state = record.final_text;
        writer.append(record);
      }
      status.completed_iterations = static_cast<int>(writer.size()) - 1;
      if (complete) {
        status.state = "complete";
      } else {
        status.state = "pending";
        record_status = false;  // leave whatever the manifest already has
      }
    } catch (const KillSignal&) {
      kill_flag.store(true);
      record_status = false;
    } catch (const Error& e) {
      status.state = "quarantined";
      status.reason = e.what();
      quarantined.fetch_add(1);
      log_line(options, "quarantined " + spec.id + "/" + doc.id + ": " + e.what());
    }

    if (record_status && !kill_flag.load()) {
#pragma omp critical(relay_manifest)
      {
        try {
          manifest.docs[spec.id][doc.id] = status;
          manifest.save(manifest_path, options.kill);
        } catch (const KillSignal&) {
          kill_flag.store(true);
        }
      }
      if (status.state == "complete")
        log_line(options, "completed " + spec.id + "/" + doc.id + " (" +
                              std::to_string(status.completed_iterations) +
                              " iterations)");
    }
  }

  outcome.docs_quarantined = quarantined.load();
  outcome.docs_ok = outcome.docs_total - outcome.docs_quarantined;
  if (kill_flag.load()) {
    outcome.killed = true;
    return outcome;
  }

  if (outcome.docs_ok == 0) {
    manifest.state = "failed";
    manifest.finished_at = deterministic ? "" : iso_now();
    manifest.save(manifest_path, options.kill);
    return outcome;
  }

  std::vector<ChainWork> chains;
  for (const auto& spec : config.chains) {
    ChainWork work;
    work.spec = &spec;
    work.checkpoints = chain_checkpoints(config, spec);
    for (const auto& doc : docs) {
      if (manifest.docs[spec.id][doc.id].state == "complete")
        work.ok_docs.push_back(doc.id);
    }
    chains.push_back(std::move(work));
  }
  score_and_report(config, config.output_dir, chains, parallel, options, &backends);

  manifest.state = "complete";
  manifest.finished_at = deterministic ? "" : iso_now();
  manifest.save(manifest_path, options.kill);
  return outcome;
}

namespace {

std::filesystem::path resolve_run_dir(const std::filesystem::path& arg) {
  if (std::filesystem::is_directory(arg)) return arg;
  if (arg.filename() == "manifest.json") return arg.parent_path();
  throw Error(ErrorKind::validation,
              arg.string() + " is neither a run directory nor a manifest.json");
}

ExperimentConfig load_run_config(const std::filesystem::path& run_dir) {
  const auto config_path = run_dir / "config.toml";
  if (!std::filesystem::exists(config_path))
    throw Error(ErrorKind::validation,
                run_dir.string() + " has no config.toml; not a run directory?");
  ExperimentConfig config = load_config(config_path);
  config.output_dir = run_dir;  // the copy may have been created elsewhere
  return config;
}

}  // namespace

RunOutcome resume_run(const std::filesystem::path& run_dir_or_manifest,
                      const RunOptions& options) {
  const auto run_dir = resolve_run_dir(run_dir_or_manifest);
  ExperimentConfig config = load_run_config(run_dir);
  RunOptions resumed = options;
  resumed.resume = true;
  return run_experiment(std::move(config), resumed);
}

void score_run(const std::filesystem::path& run_dir,
               std::vector<std::string> metric_ids, const RunOptions& options) {
  ExperimentConfig config = load_run_config(run_dir);
  if (!metric_ids.empty()) {
    for (const auto& id : metric_ids) {
      if (!metrics::is_known_metric(id))
        throw Error(ErrorKind::validation, "unknown metric id '" + id + "'");
      if (id == "factscore" && config.judge_endpoint.empty())
        throw Error(ErrorKind::validation,
                    "metric 'factscore' needs [judge].endpoint in the run config");
    }
    config.metric_ids = std::move(metric_ids);
  }

  const RunManifest manifest = RunManifest::load(run_dir / "manifest.json");
  // Backends are needed only when factscore is requested; judge transports
  // are created lazily inside score_and_report.
  Backends backends;
  const bool want_factscore =
      std::count(config.metric_ids.begin(), config.metric_ids.end(), "factscore") > 0;
  if (want_factscore) backends = build_backends(config, {});

  std::vector<ChainWork> chains;
  for (const auto& spec : config.chains) {
    ChainWork work;
    work.spec = &spec;
    work.checkpoints = chain_checkpoints(config, spec);
    auto it = manifest.docs.find(spec.id);
    if (it != manifest.docs.end()) {
      for (const auto& [doc_id, status] : it->second)
        if (status.state == "complete") work.ok_docs.push_back(doc_id);
    }
    chains.push_back(std::move(work));
  }
  score_and_report(config, run_dir, chains, config.parallel, options, &backends);
}

void report_run(const std::filesystem::path& run_dir, const RunOptions& options) {
  ExperimentConfig config = load_run_config(run_dir);

  std::vector<analysis::GradientSummary> summaries;
  for (const auto& spec : config.chains) {
    analysis::SeriesSet chain_series;
    const auto series_path = run_dir / spec.id / "series.csv";
    if (std::filesystem::exists(series_path)) {
      std::ifstream in(series_path, std::ios::binary);
      chain_series = analysis::read_series_csv(in);
    }
    const auto external_path = run_dir / "external_scores" / (spec.id + ".csv");
    if (std::filesystem::exists(external_path)) {
      std::ifstream in(external_path, std::ios::binary);
      for (auto& s : analysis::read_series_csv(in)) chain_series.push_back(std::move(s));
    }
    if (chain_series.empty()) continue;

    std::map<std::string, analysis::SeriesSet> by_metric;
    for (auto& s : chain_series) by_metric[s.metric].push_back(std::move(s));
    for (auto& [metric, series_set] : by_metric) {
      std::sort(series_set.begin(), series_set.end(),
                [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
      analysis::GroupKey group{config.corpus.dataset, spec.model_label(),
                               spec.lang_pair_label(), metric};
      summaries.push_back(
          analysis::avg_gradient(series_set, group, config.estimator));
      std::ostringstream plot;
      analysis::write_plot_csv(plot, analysis::plot_points(series_set));
      write_file_atomic(run_dir / ("plot_" + metric + "_" + spec.id + ".csv"),
                        plot.str(), options.kill, "plot");
    }
  }
  if (summaries.empty())
    throw Error(ErrorKind::validation,
                "no series found under " + run_dir.string() + "; run `score` first");

  std::sort(summaries.begin(), summaries.end(),
            [](const auto& a, const auto& b) { return a.group < b.group; });
  std::ostringstream gradients;
  analysis::write_gradient_csv(gradients, summaries);
  write_file_atomic(run_dir / "gradients.csv", gradients.str(), options.kill,
                    "gradients");
  std::set<std::string> metrics_present;
  for (const auto& s : summaries) metrics_present.insert(s.group.metric);
  for (const auto& metric : metrics_present) {
    const analysis::ReportTable table = analysis::aggregate(summaries, metric);
    write_file_atomic(run_dir / ("report_" + metric + ".txt"),
                      analysis::render_text_table(table), options.kill, "report");
    std::ostringstream csv;
    analysis::write_report_csv(csv, table);
    write_file_atomic(run_dir / ("report_" + metric + ".csv"), csv.str(),
                      options.kill, "report");
  }
  log_line(options, "report rebuilt for " + std::to_string(summaries.size()) +
                        " metric groups");
}

void ingest_scores_into_run(const std::filesystem::path& run_dir,
                            const std::filesystem::path& csv_path,
                            std::string chain_id, bool clamp,
                            const RunOptions& options) {
  ExperimentConfig config = load_run_config(run_dir);
  if (chain_id.empty()) {
    if (config.chains.size() != 1)
      throw Error(ErrorKind::validation,
                  "the run has " + std::to_string(config.chains.size()) +
                      " chains; pass --chain to pick one");
    chain_id = config.chains.front().id;
  } else {
    bool known = false;
    for (const auto& spec : config.chains) known = known || spec.id == chain_id;
    if (!known)
      throw Error(ErrorKind::validation,
                  "chain '" + chain_id + "' is not part of this run");
  }

  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + csv_path.string());
  const analysis::SeriesSet series = analysis::read_series_csv(in, clamp);

  std::ostringstream normalized;
  analysis::write_series_csv(normalized, series);
  write_file_atomic(run_dir / "external_scores" / (chain_id + ".csv"),
                    normalized.str(), options.kill, "external");
  log_line(options, "ingested " + std::to_string(series.size()) + " series for " +
                        chain_id);
}

}  // namespace relay::run
