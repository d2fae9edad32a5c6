#pragma once

#include <cstddef>
#include <functional>

#include "citerank/cocitation.hpp"
#include "citerank/graph_ingest.hpp"
#include "citerank/manifest.hpp"
#include "citerank/metrics.hpp"

namespace citerank {

struct PipelineOptions {
  NeighborMode mode = NeighborMode::exact;
  unsigned threads = 1;
  std::size_t memory_budget_bytes = std::size_t{4} << 30;
  std::function<void(std::size_t, std::size_t)> progress;
};

// Runs whatever the metric needs on an ingested dataset: co-citation
// neighborhoods and ACR for S-RCR, a single pass for the others. Stage
// timings go into `manifest` when given.
ScoreTable compute_metric(const Dataset& data, Metric metric,
                          const MetricParams& params,
                          const PipelineOptions& options = {},
                          RunManifest* manifest = nullptr);

}  // namespace citerank
