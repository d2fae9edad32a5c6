#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "citerank/graph_ingest.hpp"

namespace citerank {

struct NeighborhoodOptions {
  // Cap on the bytes of neighbor storage. The default is 4 GiB.
  std::size_t memory_budget_bytes = std::size_t{4} << 30;
  unsigned threads = 1;
  // Called after each completed block of papers with (done, total).
  std::function<void(std::size_t, std::size_t)> progress;
};

// Co-citation neighbor sets N_p in CSR form: q is in N_p iff some paper cites
// both p and q (p != q). Each list is sorted.
class NeighborhoodIndex {
 public:
  NeighborhoodIndex() = default;

  std::size_t paper_count() const { return offsets_.size() - 1; }
  std::size_t total_size() const { return neighbors_.size(); }

  std::span<const PaperIndex> neighbors(PaperIndex p) const {
    return {neighbors_.data() + offsets_[p],
            neighbors_.data() + offsets_[p + 1]};
  }
  std::size_t size(PaperIndex p) const {
    return static_cast<std::size_t>(offsets_[p + 1] - offsets_[p]);
  }
  bool contains(PaperIndex p, PaperIndex q) const;

 private:
  friend NeighborhoodIndex build_neighborhoods(const CitationGraph&,
                                               const NeighborhoodOptions&);
  std::vector<std::uint64_t> offsets_{0};
  std::vector<PaperIndex> neighbors_;
};

// Throws BudgetExceeded once materialized neighbor storage would pass the
// budget. Output is identical for any thread count.
NeighborhoodIndex build_neighborhoods(const CitationGraph& graph,
                                      const NeighborhoodOptions& options = {});

enum class NeighborMode { exact, streaming };

std::string_view mode_name(NeighborMode mode);

// Per-paper sum and count of neighbor ACR values, the raw material of the
// S-RCR denominator. Exact mode sums over the set N_p. Streaming mode sums
// over every co-citation occurrence, so a neighbor co-cited by k papers
// contributes k times.
struct NeighborAcrAccumulator {
  NeighborMode mode = NeighborMode::exact;
  std::vector<double> sum;
  std::vector<std::uint64_t> count;

  double mean(PaperIndex p) const {
    return count[p] > 0 ? sum[p] / static_cast<double>(count[p]) : 0.0;
  }
};

// Exact mode, driven from a materialized index. `acr` must have one entry per
// paper; a mismatch is a fatal inconsistency.
NeighborAcrAccumulator accumulate_neighbor_acr(const NeighborhoodIndex& index,
                                               std::span<const double> acr,
                                               unsigned threads = 1);

// Streaming mode: one pass over reference lists, O(edges) time, no
// neighborhood materialization.
NeighborAcrAccumulator accumulate_neighbor_acr(const CitationGraph& graph,
                                               std::span<const double> acr);

struct DistributionSummary {
  // Bucket b covers sizes [lo(b), hi(b)]: 0 | 1 | 2-3 | 4-7 | ...
  std::map<unsigned, std::size_t> histogram;
  std::size_t considered = 0;
  double mean = 0.0;
  std::size_t max = 0;
  std::size_t zero_count = 0;

  static unsigned bucket_of(std::size_t size);
  static std::size_t bucket_lo(unsigned bucket);
  static std::size_t bucket_hi(unsigned bucket);
};

// With `citation_info_only`, papers nobody cites are left out of the summary.
DistributionSummary neighborhood_stats(const NeighborhoodIndex& index,
                                       const CitationGraph& graph,
                                       bool citation_info_only);

// `bucket_lo,bucket_hi,count` rows followed by a `# mean=.. max=..` trailer.
void write_distribution_csv(const DistributionSummary& summary,
                            std::ostream& out);

}  // namespace citerank
