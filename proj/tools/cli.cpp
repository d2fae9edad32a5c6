#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "citerank/cocitation.hpp"
#include "citerank/error.hpp"
#include "citerank/eval.hpp"
#include "citerank/graph_ingest.hpp"
#include "citerank/kernels.hpp"
#include "citerank/manifest.hpp"
#include "citerank/metrics.hpp"
#include "citerank/pipeline.hpp"
#include "citerank/ranking.hpp"
#include "citerank/synth.hpp"

namespace citerank::cli {
namespace {

struct RankArgs {
  std::string papers;
  std::string refs;
  std::string metric = "srcr";
  std::string mode = "exact";
  std::string out;
  std::string scores;
  std::string from_manifest;
  double alpha = 1.0;
  double damping = 0.85;
  double tolerance = 1e-10;
  int max_iterations = 200;
  std::optional<int> as_of_year;
  unsigned threads = 1;
  std::size_t memory_budget_mib = 4096;
  bool progress = false;
};

struct StatsArgs {
  std::string papers;
  std::string refs;
  std::string histogram;
  bool all_papers = false;
  unsigned threads = 1;
  std::size_t memory_budget_mib = 4096;
};

struct EvalArgs {
  std::string submission;
  std::string judgments;
  std::string csv;
};

struct GenArgs {
  SynthParams params;
  std::string out_dir;
};

struct ValidateArgs {
  std::string papers;
  std::string refs;
  bool strict = false;
};

std::size_t mib_to_bytes(std::size_t mib) { return mib << 20; }

// Fills options the user did not pass explicitly from a saved manifest.
void apply_manifest(const RunManifest& m, CLI::App& cmd, RankArgs& a) {
  auto take = [&](const char* flag, const char* key, auto apply) {
    if (cmd.count(flag) > 0) return;
    if (auto v = m.get(key)) apply(*v);
  };
  take("--papers", "papers", [&](const std::string& v) { a.papers = v; });
  take("--refs", "refs", [&](const std::string& v) { a.refs = v; });
  take("--metric", "metric", [&](const std::string& v) { a.metric = v; });
  take("--mode", "mode", [&](const std::string& v) { a.mode = v; });
  take("--out", "out", [&](const std::string& v) { a.out = v; });
  take("--scores", "scores", [&](const std::string& v) { a.scores = v; });
  take("--alpha", "alpha", [&](const std::string& v) { a.alpha = std::stod(v); });
  take("--damping", "damping",
       [&](const std::string& v) { a.damping = std::stod(v); });
  take("--tolerance", "tolerance",
       [&](const std::string& v) { a.tolerance = std::stod(v); });
  take("--max-iterations", "max_iterations",
       [&](const std::string& v) { a.max_iterations = std::stoi(v); });
  take("--as-of-year", "as_of_year",
       [&](const std::string& v) { a.as_of_year = std::stoi(v); });
  take("--threads", "threads", [&](const std::string& v) {
    a.threads = static_cast<unsigned>(std::stoul(v));
  });
  take("--memory-budget-mib", "memory_budget_mib",
       [&](const std::string& v) { a.memory_budget_mib = std::stoull(v); });
}

int cmd_rank(RankArgs a, CLI::App& cmd, std::ostream& out, std::ostream& err) {
  if (!a.from_manifest.empty()) {
    apply_manifest(RunManifest::read(a.from_manifest), cmd, a);
  }
  if (a.papers.empty() || a.refs.empty() || a.out.empty()) {
    throw Error(Module::cli, "rank needs --papers, --refs and --out");
  }
  const auto metric = parse_metric(a.metric);
  if (!metric) throw Error(Module::cli, "unknown metric '" + a.metric + "'");
  if (a.mode != "exact" && a.mode != "streaming") {
    throw Error(Module::cli, "unknown mode '" + a.mode + "'");
  }

  MetricParams params;
  params.alpha = a.alpha;
  params.damping = a.damping;
  params.pagerank_tolerance = a.tolerance;
  params.pagerank_max_iterations = a.max_iterations;
  if (a.as_of_year) params.as_of_year = *a.as_of_year;
  params.validate();

  PipelineOptions options;
  options.mode = a.mode == "exact" ? NeighborMode::exact : NeighborMode::streaming;
  options.threads = a.threads;
  options.memory_budget_bytes = mib_to_bytes(a.memory_budget_mib);
  if (a.progress) {
    options.progress = [&err](std::size_t done, std::size_t total) {
      err << "cocitation: " << done << '/' << total << " papers\n";
    };
  }

  RunManifest manifest("rank");
  manifest.set("papers", a.papers);
  manifest.set("refs", a.refs);
  manifest.set("metric", a.metric);
  manifest.set("mode", a.mode);
  manifest.set("alpha", format_shortest(a.alpha));
  manifest.set("damping", format_shortest(a.damping));
  manifest.set("tolerance", format_shortest(a.tolerance));
  manifest.set("max_iterations", std::to_string(a.max_iterations));
  manifest.set("threads", std::to_string(a.threads));
  manifest.set("memory_budget_mib", std::to_string(a.memory_budget_mib));
  manifest.set("simd", std::string(kernels::backend_name(kernels::active().backend)));
  manifest.set("out", a.out);
  if (!a.scores.empty()) manifest.set("scores", a.scores);

  std::optional<StageTimer> timer(std::in_place, manifest, "ingest");
  const Dataset data = load_dataset(a.papers, a.refs);
  timer.reset();
  out << data.summary.to_line() << '\n';

  params.as_of_year = resolve_as_of_year(data.papers, params);
  manifest.set("as_of_year", std::to_string(*params.as_of_year));

  const ScoreTable scores =
      compute_metric(data, *metric, params, options, &manifest);
  if (scores.future_dated > 0) {
    err << "warning: " << scores.future_dated
        << " papers are dated after as_of_year; their age is clamped to 0\n";
  }
  if (scores.pagerank) {
    manifest.set("pagerank_iterations", std::to_string(scores.pagerank->iterations));
    manifest.set("pagerank_converged", scores.pagerank->converged ? "true" : "false");
    if (!scores.pagerank->converged) {
      err << "warning: pagerank did not converge in " << scores.pagerank->iterations
          << " iterations (last delta " << format_shortest(scores.pagerank->final_delta)
          << ")\n";
    }
  }

  timer.emplace(manifest, "normalize");
  const ProbabilityTable probs = normalize(scores);
  timer.emplace(manifest, "rank");
  const RankedList list = rank(probs, data.papers.ids);
  timer.emplace(manifest, "write");
  write_submission(list, data.papers.ids, a.out);
  if (!a.scores.empty()) {
    std::ofstream f(a.scores, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Module::metrics, "cannot write '" + a.scores + "'");
    write_scores(scores, data.papers.ids, f);
  }
  timer.reset();

  manifest.write(a.out + ".manifest");
  out << "wrote " << a.out << " metric=" << metric_name(scores.metric)
      << " papers=" << list.entries.size() << '\n';
  return 0;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Submission submission = parse_submission(a.submission);
  const JudgmentSet judgments = parse_judgments(a.judgments);
  const AgreementReport report = agreement(submission, judgments);
  out << report.to_line() << '\n';
  if (!a.csv.empty()) {
    std::ofstream f(a.csv, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Module::eval, "cannot write '" + a.csv + "'");
    report.write_csv(f);
  }
  return 0;
}

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  RunManifest manifest("stats");
  manifest.set("papers", a.papers);
  manifest.set("refs", a.refs);
  manifest.set("all_papers", a.all_papers ? "true" : "false");
  std::optional<StageTimer> timer(std::in_place, manifest, "ingest");
  const Dataset data = load_dataset(a.papers, a.refs);
  timer.emplace(manifest, "cocitation");
  NeighborhoodOptions nopts;
  nopts.memory_budget_bytes = mib_to_bytes(a.memory_budget_mib);
  nopts.threads = a.threads;
  const NeighborhoodIndex index = build_neighborhoods(data.graph, nopts);
  timer.emplace(manifest, "stats");
  const DistributionSummary summary =
      neighborhood_stats(index, data.graph, !a.all_papers);
  timer.reset();

  std::size_t with_info = 0;
  for (PaperIndex p = 0; p < data.graph.paper_count(); ++p) {
    if (data.graph.has_citation_info(p)) ++with_info;
  }
  out << "total=" << data.papers.count() << " with_citation_info=" << with_info
      << " without_citation_info=" << data.papers.count() - with_info
      << " considered=" << summary.considered
      << " avg_neighborhood_size=" << format_shortest(summary.mean)
      << " max_neighborhood_size=" << summary.max
      << " zero_neighborhoods=" << summary.zero_count << '\n';
  if (!a.histogram.empty()) {
    std::ofstream f(a.histogram, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Module::cocitation, "cannot write '" + a.histogram + "'");
    write_distribution_csv(summary, f);
    manifest.set("histogram", a.histogram);
    manifest.write(a.histogram + ".manifest");
  }
  return 0;
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  RunManifest manifest("gen");
  const SynthParams& p = a.params;
  manifest.set("paper_count", std::to_string(p.paper_count));
  manifest.set("min_year", std::to_string(p.min_year));
  manifest.set("max_year", std::to_string(p.max_year));
  manifest.set("attachment_exponent", format_shortest(p.attachment_exponent));
  manifest.set("mean_out_degree", format_shortest(p.mean_out_degree));
  manifest.set("zero_info_fraction", format_shortest(p.zero_info_fraction));
  manifest.set("seed", std::to_string(p.seed));
  manifest.set("judgment_count", std::to_string(p.judgment_count));
  manifest.set("min_rank_gap", std::to_string(p.effective_rank_gap()));
  std::optional<StageTimer> timer(std::in_place, manifest, "generate");
  const SynthOutput synth = generate(p);
  timer.emplace(manifest, "write");
  const SynthPaths paths = write_synth(synth, a.out_dir);
  timer.reset();
  manifest.write(std::filesystem::path(a.out_dir) / "gen.manifest");

  std::size_t zero_degree = 0;
  std::vector<bool> cites(synth.papers.count(), false);
  for (const auto& [from, to] : synth.edges.edges) {
    cites[*synth.papers.ids.find(from)] = true;
  }
  for (PaperIndex i = 0; i < synth.papers.count(); ++i) {
    if (!cites[i] && synth.in_degree[i] == 0) ++zero_degree;
  }
  out << "papers=" << synth.papers.count() << " edges=" << synth.edges.edges.size()
      << " zero_degree=" << zero_degree
      << " judgments=" << synth.judgments.count() << " dir=" << a.out_dir << '\n';
  return 0;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  const Dataset data = load_dataset(a.papers, a.refs);
  out << data.summary.to_line() << '\n';
  if (a.strict && data.summary.warnings() > 0) {
    return exit_code(Module::ingest);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Static ranking of papers in a citation graph"};
  app.require_subcommand(1);
  std::string simd = "auto";
  app.add_option("--simd", simd, "Kernel backend: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank", "Score, normalize and rank papers");
  rank_cmd->add_option("--papers", rank_args.papers, "Papers file (id<TAB>year)");
  rank_cmd->add_option("--refs", rank_args.refs, "References file (citing<TAB>cited)");
  rank_cmd->add_option("--metric", rank_args.metric, "citations, acr, srcr or pagerank")
      ->check(CLI::IsMember({"citations", "acr", "srcr", "pagerank"}));
  rank_cmd->add_option("--mode", rank_args.mode, "Neighborhoods: exact or streaming")
      ->check(CLI::IsMember({"exact", "streaming"}));
  rank_cmd->add_option("--alpha", rank_args.alpha, "S-RCR additive smoothing")
      ->check(CLI::NonNegativeNumber);
  rank_cmd->add_option("--damping", rank_args.damping, "PageRank damping factor");
  rank_cmd->add_option("--tolerance", rank_args.tolerance, "PageRank L1 tolerance");
  rank_cmd->add_option("--max-iterations", rank_args.max_iterations,
                       "PageRank iteration cap");
  rank_cmd->add_option("--as-of-year", rank_args.as_of_year,
                       "Reference year for ages (default: newest paper)");
  rank_cmd->add_option("--threads", rank_args.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  rank_cmd->add_option("--memory-budget-mib", rank_args.memory_budget_mib,
                       "Cap on co-citation neighborhood storage");
  rank_cmd->add_option("--out", rank_args.out, "Submission file to write");
  rank_cmd->add_option("--scores", rank_args.scores, "Also write raw scores here");
  rank_cmd->add_option("--from-manifest", rank_args.from_manifest,
                       "Take unset options from a previous run's manifest");
  rank_cmd->add_flag("--progress", rank_args.progress, "Report co-citation progress");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Agreement of a submission with judgments");
  eval_cmd->add_option("--submission", eval_args.submission)->required();
  eval_cmd->add_option("--judgments", eval_args.judgments)->required();
  eval_cmd->add_option("--csv", eval_args.csv, "Also write the report as CSV");

  StatsArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "Dataset and neighborhood-size statistics");
  stats_cmd->add_option("--papers", stats_args.papers)->required();
  stats_cmd->add_option("--refs", stats_args.refs)->required();
  stats_cmd->add_option("--histogram", stats_args.histogram, "Histogram CSV to write");
  stats_cmd->add_flag("--all-papers", stats_args.all_papers,
                      "Include papers without citation information");
  stats_cmd->add_option("--threads", stats_args.threads)->check(CLI::PositiveNumber);
  stats_cmd->add_option("--memory-budget-mib", stats_args.memory_budget_mib);

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic citation dataset");
  gen_cmd->add_option("--papers", gen_args.params.paper_count, "Number of papers");
  gen_cmd->add_option("--min-year", gen_args.params.min_year);
  gen_cmd->add_option("--max-year", gen_args.params.max_year);
  gen_cmd->add_option("--exponent", gen_args.params.attachment_exponent,
                      "Preferential attachment exponent");
  gen_cmd->add_option("--mean-refs", gen_args.params.mean_out_degree,
                      "Mean reference-list length");
  gen_cmd->add_option("--zero-info", gen_args.params.zero_info_fraction,
                      "Fraction of papers without citation information");
  gen_cmd->add_option("--seed", gen_args.params.seed);
  gen_cmd->add_option("--judgments", gen_args.params.judgment_count,
                      "Number of judgment pairs");
  gen_cmd->add_option("--min-rank-gap", gen_args.params.min_rank_gap,
                      "Minimum planted-rank gap per judgment (0: papers/10)");
  gen_cmd->add_option("--out-dir", gen_args.out_dir)->required();

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "Ingest and report anomalies");
  validate_cmd->add_option("--papers", validate_args.papers)->required();
  validate_cmd->add_option("--refs", validate_args.refs)->required();
  validate_cmd->add_flag("--strict", validate_args.strict,
                         "Fail when any row or edge was dropped");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("citerank");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(Module::cli);
  }

  try {
    if (simd != "auto") {
      const auto backend = kernels::parse_backend(simd);
      if (!backend || !kernels::select(*backend)) {
        throw Error(Module::cli, "kernel backend '" + simd + "' is not available");
      }
    }
    if (*rank_cmd) return cmd_rank(rank_args, *rank_cmd, out, err);
    if (*eval_cmd) return cmd_eval(eval_args, out);
    if (*stats_cmd) return cmd_stats(stats_args, out);
    if (*gen_cmd) return cmd_gen(gen_args, out);
    if (*validate_cmd) return cmd_validate(validate_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code(Module::cli);
}

}  // namespace citerank::cli
