#include "citerank/cocitation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>

#include "citerank/error.hpp"
#include "citerank/kernels.hpp"
#include "citerank/parallel.hpp"

namespace citerank {
namespace {

constexpr std::size_t kProgressStride = std::size_t{1} << 16;

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Upper bound on materialized pairs: sum over citing papers of |R|(|R|-1).
std::uint64_t pair_upper_bound(const CitationGraph& graph) {
  std::uint64_t total = 0;
  for (PaperIndex c = 0; c < graph.paper_count(); ++c) {
    const std::uint64_t r = graph.out_degree(c);
    if (r > 1) total += r * (r - 1);
  }
  return total;
}

}  // namespace

bool NeighborhoodIndex::contains(PaperIndex p, PaperIndex q) const {
  const auto list = neighbors(p);
  return std::binary_search(list.begin(), list.end(), q);
}

NeighborhoodIndex build_neighborhoods(const CitationGraph& graph,
                                      const NeighborhoodOptions& options) {
  const std::size_t n = graph.paper_count();
  const std::size_t budget = options.memory_budget_bytes;
  const std::size_t offset_bytes = (n + 1) * sizeof(std::uint64_t);
  if (offset_bytes > budget) {
    throw BudgetExceeded("neighborhood offsets for " + std::to_string(n) +
                             " papers need " + std::to_string(offset_bytes) +
                             " bytes, budget is " + std::to_string(budget),
                         offset_bytes, budget);
  }

  const unsigned workers = effective_workers(n, options.threads);
  struct Part {
    std::vector<std::uint64_t> sizes;
    std::vector<PaperIndex> neighbors;
  };
  std::vector<Part> parts(workers);
  std::atomic<std::size_t> used_bytes{offset_bytes};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto fill = [&](Part& part, std::size_t begin, std::size_t end) {
    part.sizes.reserve(end - begin);
    std::vector<PaperIndex> stamp(n, std::numeric_limits<PaperIndex>::max());
    std::vector<PaperIndex> scratch;
    for (std::size_t i = begin; i < end; ++i) {
      const auto p = static_cast<PaperIndex>(i);
      scratch.clear();
      stamp[p] = p;
      for (PaperIndex c : graph.citers(p)) {
        for (PaperIndex q : graph.references(c)) {
          if (stamp[q] != p) {
            stamp[q] = p;
            scratch.push_back(q);
          }
        }
      }
      std::sort(scratch.begin(), scratch.end());
      part.sizes.push_back(scratch.size());
      part.neighbors.insert(part.neighbors.end(), scratch.begin(),
                            scratch.end());

      const std::size_t added = scratch.size() * sizeof(PaperIndex);
      const std::size_t now = used_bytes.fetch_add(added) + added;
      if (now > budget) {
        throw BudgetExceeded(
            "co-citation neighborhoods exceed the memory budget: " +
                std::to_string(now) + " bytes used after paper " +
                std::to_string(i) + " of " + std::to_string(n) +
                " (budget " + std::to_string(budget) +
                " bytes; reference lists imply up to " +
                std::to_string(pair_upper_bound(graph)) +
                " neighbor entries)",
            now, budget);
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (options.progress && finished % kProgressStride == 0) {
        std::lock_guard lock(progress_mutex);
        options.progress(finished, n);
      }
    }
  };
  // One contiguous range of papers per worker; concatenating the parts in
  // worker order gives the same index for any worker count.
  parallel_for(workers, workers, [&](std::size_t first, std::size_t last) {
    for (std::size_t w = first; w < last; ++w) {
      fill(parts[w], n * w / workers, n * (w + 1) / workers);
    }
  });

  NeighborhoodIndex index;
  index.offsets_.reserve(n + 1);
  std::size_t total = 0;
  for (const Part& part : parts) total += part.neighbors.size();
  index.neighbors_.reserve(total);
  for (Part& part : parts) {
    for (std::uint64_t s : part.sizes) {
      index.offsets_.push_back(index.offsets_.back() + s);
    }
    index.neighbors_.insert(index.neighbors_.end(), part.neighbors.begin(),
                            part.neighbors.end());
    part = Part{};
  }
  if (options.progress) options.progress(n, n);
  return index;
}

std::string_view mode_name(NeighborMode mode) {
  return mode == NeighborMode::exact ? "exact" : "streaming";
}

NeighborAcrAccumulator accumulate_neighbor_acr(const NeighborhoodIndex& index,
                                               std::span<const double> acr,
                                               unsigned threads) {
  const std::size_t n = index.paper_count();
  if (acr.size() != n) {
    throw Error(Module::cocitation,
                "ACR table covers " + std::to_string(acr.size()) +
                    " papers but the neighborhood index has " +
                    std::to_string(n));
  }
  NeighborAcrAccumulator acc;
  acc.mode = NeighborMode::exact;
  acc.sum.assign(n, 0.0);
  acc.count.assign(n, 0);
  const auto& k = kernels::active();
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto p = static_cast<PaperIndex>(i);
      acc.sum[p] = k.gather_sum(acr, index.neighbors(p));
      acc.count[p] = index.size(p);
    }
  });
  return acc;
}

NeighborAcrAccumulator accumulate_neighbor_acr(const CitationGraph& graph,
                                               std::span<const double> acr) {
  const std::size_t n = graph.paper_count();
  if (acr.size() != n) {
    throw Error(Module::cocitation,
                "ACR table covers " + std::to_string(acr.size()) +
                    " papers but the graph has " + std::to_string(n));
  }
  NeighborAcrAccumulator acc;
  acc.mode = NeighborMode::streaming;
  acc.sum.assign(n, 0.0);
  acc.count.assign(n, 0);
  std::vector<double> prefix;
  for (PaperIndex c = 0; c < n; ++c) {
    const auto refs = graph.references(c);
    const std::size_t r = refs.size();
    if (r < 2) continue;
    // Sum of everything but R[i] as prefix + suffix, so no cancellation.
    prefix.resize(r);
    double running = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      prefix[i] = running;
      running += acr[refs[i]];
    }
    double suffix = 0.0;
    for (std::size_t i = r; i-- > 0;) {
      acc.sum[refs[i]] += prefix[i] + suffix;
      acc.count[refs[i]] += r - 1;
      suffix += acr[refs[i]];
    }
  }
  return acc;
}

unsigned DistributionSummary::bucket_of(std::size_t size) {
  return size == 0 ? 0u : static_cast<unsigned>(std::bit_width(size));
}

std::size_t DistributionSummary::bucket_lo(unsigned bucket) {
  return bucket == 0 ? 0 : std::size_t{1} << (bucket - 1);
}

std::size_t DistributionSummary::bucket_hi(unsigned bucket) {
  return bucket == 0 ? 0 : (std::size_t{1} << bucket) - 1;
}

DistributionSummary neighborhood_stats(const NeighborhoodIndex& index,
                                       const CitationGraph& graph,
                                       bool citation_info_only) {
  DistributionSummary summary;
  std::size_t total = 0;
  for (PaperIndex p = 0; p < index.paper_count(); ++p) {
    if (citation_info_only && !graph.has_citation_info(p)) continue;
    const std::size_t size = index.size(p);
    ++summary.considered;
    ++summary.histogram[DistributionSummary::bucket_of(size)];
    total += size;
    summary.max = std::max(summary.max, size);
    if (size == 0) ++summary.zero_count;
  }
  if (summary.considered > 0) {
    summary.mean =
        static_cast<double>(total) / static_cast<double>(summary.considered);
  }
  return summary;
}

void write_distribution_csv(const DistributionSummary& summary,
                            std::ostream& out) {
  out << "bucket_lo,bucket_hi,count\n";
  for (const auto& [bucket, count] : summary.histogram) {
    out << DistributionSummary::bucket_lo(bucket) << ','
        << DistributionSummary::bucket_hi(bucket) << ',' << count << '\n';
  }
  out << "# mean=" << shortest(summary.mean) << " max=" << summary.max
      << " zero_count=" << summary.zero_count
      << " considered=" << summary.considered << '\n';
}

}  // namespace citerank
