#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citerank/cocitation.hpp"
#include "citerank/graph_ingest.hpp"

namespace citerank {

enum class Metric { citations, acr, srcr, pagerank };

std::string_view metric_name(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);

struct MetricParams {
  // Reference year for paper ages. Unset means the newest year in the data.
  std::optional<std::int32_t> as_of_year;
  // Additive smoothing constant for S-RCR.
  double alpha = 1.0;
  double damping = 0.85;
  double pagerank_tolerance = 1e-10;
  int pagerank_max_iterations = 200;

  // Throws Error(metrics) on out-of-range values.
  void validate() const;
};

struct PageRankStatus {
  bool converged = false;
  int iterations = 0;
  double final_delta = 0.0;
};

// One score per paper, indexed by PaperIndex.
struct ScoreTable {
  Metric metric = Metric::citations;
  std::vector<double> scores;
  // Parameters that produced the scores, in header order.
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<PageRankStatus> pagerank;
  // Papers whose publication year lies after as_of_year (age clamped to 0).
  std::size_t future_dated = 0;

  std::size_t size() const { return scores.size(); }
  std::string params_string() const;
};

std::int32_t resolve_as_of_year(const PaperTable& papers,
                                const MetricParams& params);

// Smoothed ratio of a paper's ACR to the mean ACR of its neighbors.
// Equal inputs give exactly 1.
inline double srcr_score(double acr, double neighbor_mean, double alpha) {
  return (acr + alpha) / (neighbor_mean + alpha);
}

ScoreTable citation_counts(const CitationGraph& graph);

// Citations(p) / (Age(p) + 1) with Age(p) = max(0, as_of_year - year(p)).
ScoreTable acr(const CitationGraph& graph, const PaperTable& papers,
               const MetricParams& params);

// (ACR(p) + alpha) / (m(p) + alpha), m(p) the accumulator's neighbor mean
// (0 for an empty neighborhood).
ScoreTable srcr(const ScoreTable& acr_table,
                const NeighborAcrAccumulator& accumulator,
                const MetricParams& params);

// Power iteration where each paper receives rank from the papers citing it.
// Mass of papers with no references is spread uniformly. Never throws on
// non-convergence; see ScoreTable::pagerank.
ScoreTable pagerank(const CitationGraph& graph, const MetricParams& params,
                    unsigned threads = 1);

// `paper_id<TAB>score` lines after a `# metric=<name> params=<k=v,...>`
// header; scores use the shortest round-trip decimal form.
void write_scores(const ScoreTable& table, const IdIndex& ids,
                  std::ostream& out);

// Shortest decimal string that parses back to exactly `value`.
std::string format_shortest(double value);

}  // namespace citerank
