#include "citerank/pipeline.hpp"

#include <optional>

namespace citerank {

ScoreTable compute_metric(const Dataset& data, Metric metric,
                          const MetricParams& params,
                          const PipelineOptions& options,
                          RunManifest* manifest) {
  params.validate();
  RunManifest scratch;
  RunManifest& timings = manifest != nullptr ? *manifest : scratch;

  switch (metric) {
    case Metric::citations: {
      StageTimer t(timings, "metric");
      return citation_counts(data.graph);
    }
    case Metric::acr: {
      StageTimer t(timings, "metric");
      return acr(data.graph, data.papers, params);
    }
    case Metric::pagerank: {
      StageTimer t(timings, "metric");
      return pagerank(data.graph, params, options.threads);
    }
    case Metric::srcr: {
      std::optional<StageTimer> t(std::in_place, timings, "acr");
      const ScoreTable acr_table = acr(data.graph, data.papers, params);
      t.reset();
      NeighborAcrAccumulator acc;
      t.emplace(timings, "cocitation");
      if (options.mode == NeighborMode::exact) {
        NeighborhoodOptions nopts;
        nopts.memory_budget_bytes = options.memory_budget_bytes;
        nopts.threads = options.threads;
        nopts.progress = options.progress;
        const NeighborhoodIndex index = build_neighborhoods(data.graph, nopts);
        acc = accumulate_neighbor_acr(index, acr_table.scores, options.threads);
      } else {
        acc = accumulate_neighbor_acr(data.graph, acr_table.scores);
      }
      t.reset();
      StageTimer metric_timer(timings, "metric");
      return srcr(acr_table, acc, params);
    }
  }
  return {};
}

}  // namespace citerank
