#include "citerank/metrics.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "citerank/error.hpp"
#include "citerank/kernels.hpp"
#include "citerank/parallel.hpp"

namespace citerank {
namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(Module::metrics, std::string(what) + " covers " +
                                     std::to_string(got) +
                                     " papers, expected " +
                                     std::to_string(want));
  }
}

std::string param_value(const std::vector<std::pair<std::string, std::string>>& params,
                        std::string_view key) {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return {};
}

}  // namespace

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::citations: return "citations";
    case Metric::acr: return "acr";
    case Metric::srcr: return "srcr";
    case Metric::pagerank: return "pagerank";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : {Metric::citations, Metric::acr, Metric::srcr,
                   Metric::pagerank}) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

void MetricParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(Module::metrics, "alpha must be a finite value >= 0");
  }
  if (!(damping > 0.0 && damping < 1.0)) {
    throw Error(Module::metrics, "damping must lie in (0, 1)");
  }
  if (!(pagerank_tolerance > 0.0)) {
    throw Error(Module::metrics, "pagerank tolerance must be > 0");
  }
  if (pagerank_max_iterations <= 0) {
    throw Error(Module::metrics, "pagerank max iterations must be > 0");
  }
}

std::string format_shortest(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string ScoreTable::params_string() const {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ',';
    out += k + '=' + v;
  }
  return out;
}

std::int32_t resolve_as_of_year(const PaperTable& papers,
                                const MetricParams& params) {
  return params.as_of_year.value_or(papers.max_year());
}

ScoreTable citation_counts(const CitationGraph& graph) {
  ScoreTable table;
  table.metric = Metric::citations;
  const auto degrees = graph.in_degrees();
  table.scores.assign(degrees.begin(), degrees.end());
  return table;
}

ScoreTable acr(const CitationGraph& graph, const PaperTable& papers,
               const MetricParams& params) {
  if (papers.count() != graph.paper_count()) {
    throw Error(Module::metrics,
                "paper table has " + std::to_string(papers.count()) +
                    " records but the graph has " +
                    std::to_string(graph.paper_count()) + " papers");
  }
  const std::int32_t as_of = resolve_as_of_year(papers, params);
  ScoreTable table;
  table.metric = Metric::acr;
  table.params = {{"as_of_year", std::to_string(as_of)}};
  table.scores.resize(graph.paper_count());
  for (std::int32_t year : papers.years) {
    if (year > as_of) ++table.future_dated;
  }
  kernels::active().acr(graph.in_degrees(), papers.years, as_of, table.scores);
  return table;
}

ScoreTable srcr(const ScoreTable& acr_table,
                const NeighborAcrAccumulator& accumulator,
                const MetricParams& params) {
  params.validate();
  if (acr_table.metric != Metric::acr) {
    throw Error(Module::metrics, "S-RCR needs an ACR table, got " +
                                     std::string(metric_name(acr_table.metric)));
  }
  const std::size_t n = acr_table.size();
  require_size(accumulator.sum.size(), n, "neighbor accumulator");
  require_size(accumulator.count.size(), n, "neighbor accumulator");
  if (params.alpha == 0.0) {
    for (std::size_t p = 0; p < n; ++p) {
      if (accumulator.mean(static_cast<PaperIndex>(p)) == 0.0) {
        throw Error(Module::metrics,
                    "alpha=0 divides by a zero neighbor mean for paper index " +
                        std::to_string(p) + "; use a positive alpha");
      }
    }
  }
  ScoreTable table;
  table.metric = Metric::srcr;
  table.params = {{"as_of_year", param_value(acr_table.params, "as_of_year")},
                  {"alpha", format_shortest(params.alpha)},
                  {"mode", std::string(mode_name(accumulator.mode))}};
  table.future_dated = acr_table.future_dated;
  table.scores.resize(n);
  kernels::active().srcr(acr_table.scores, accumulator.sum, accumulator.count,
                         params.alpha, table.scores);
  return table;
}

ScoreTable pagerank(const CitationGraph& graph, const MetricParams& params,
                    unsigned threads) {
  params.validate();
  const std::size_t n = graph.paper_count();
  ScoreTable table;
  table.metric = Metric::pagerank;
  table.params = {{"damping", format_shortest(params.damping)},
                  {"tolerance", format_shortest(params.pagerank_tolerance)},
                  {"max_iterations",
                   std::to_string(params.pagerank_max_iterations)}};
  PageRankStatus status;
  if (n == 0) {
    status.converged = true;
    table.pagerank = status;
    return table;
  }

  const auto& k = kernels::active();
  const double d = params.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n), next(n), contrib(n), inv_out(n);
  std::vector<PaperIndex> dangling;
  for (PaperIndex p = 0; p < n; ++p) {
    const std::uint32_t out = graph.out_degree(p);
    inv_out[p] = out > 0 ? 1.0 / static_cast<double>(out) : 0.0;
    if (out == 0) dangling.push_back(p);
  }

  for (int it = 1; it <= params.pagerank_max_iterations; ++it) {
    k.multiply(rank, inv_out, contrib);
    const double dangling_mass = k.gather_sum(rank, dangling);
    const double base = (1.0 - d) * inv_n + d * dangling_mass * inv_n;
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t p = begin; p < end; ++p) {
        next[p] = k.gather_sum(contrib, graph.citers(static_cast<PaperIndex>(p)));
      }
    });
    k.scale_shift(next, d, base, next);
    status.final_delta = k.l1_distance(next, rank);
    status.iterations = it;
    rank.swap(next);
    if (status.final_delta < params.pagerank_tolerance) {
      status.converged = true;
      break;
    }
  }
  table.params.emplace_back("iterations", std::to_string(status.iterations));
  table.params.emplace_back("converged", status.converged ? "true" : "false");
  table.pagerank = status;
  table.scores = std::move(rank);
  return table;
}

void write_scores(const ScoreTable& table, const IdIndex& ids,
                  std::ostream& out) {
  out << "# metric=" << metric_name(table.metric)
      << " params=" << table.params_string() << '\n';
  for (std::size_t p = 0; p < table.size(); ++p) {
    out << ids.token(static_cast<PaperIndex>(p)) << '\t'
        << format_shortest(table.scores[p]) << '\n';
  }
}

}  // namespace citerank
