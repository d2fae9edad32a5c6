#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace citerank {

// Dense internal paper index. Original IDs are opaque tokens kept in IdIndex.
using PaperIndex = std::uint32_t;

inline constexpr std::size_t kMaxIdLength = 64;
inline constexpr std::int32_t kMinYear = 1500;
inline constexpr std::int32_t kDefaultMaxYear = 2100;

// Bijection between original ID tokens and dense indices, assigned in
// insertion order.
class IdIndex {
 public:
  // Returns the index of `token`, and whether it was newly inserted.
  std::pair<PaperIndex, bool> insert(std::string_view token);
  std::optional<PaperIndex> find(std::string_view token) const;

  const std::string& token(PaperIndex index) const { return tokens_[index]; }
  std::span<const std::string> tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, PaperIndex, Hash, std::equal_to<>> lookup_;
};

// Row-level anomaly counts from parsing one input file.
struct ParseStats {
  std::size_t rows = 0;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
  std::size_t year_out_of_range = 0;
};

struct PaperRecord {
  std::string_view id;
  std::int32_t year;
};

struct PaperTable {
  IdIndex ids;
  std::vector<std::int32_t> years;  // indexed by PaperIndex
  ParseStats stats;

  std::size_t count() const { return years.size(); }
  PaperRecord record(PaperIndex index) const {
    return {ids.token(index), years[index]};
  }
  std::int32_t max_year() const;
};

struct EdgeList {
  std::vector<std::pair<std::string, std::string>> edges;  // citing, cited
  ParseStats stats;
};

struct PaperParseOptions {
  std::int32_t max_year = kDefaultMaxYear;
};

// Rows are `paper_id<TAB>year`. Duplicate IDs keep the first occurrence.
// Throws Error(ingest) on I/O failure or when no valid row remains.
PaperTable parse_papers(const std::filesystem::path& path,
                        const PaperParseOptions& options = {});
PaperTable parse_papers(std::istream& in, const PaperParseOptions& options = {});

// Rows are `citing_id<TAB>cited_id`, returned in file order.
EdgeList parse_references(const std::filesystem::path& path);
EdgeList parse_references(std::istream& in);

struct GraphBuildStats {
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
  std::size_t unknown_id_edges = 0;
};

// Immutable citation graph, edges stored citing -> cited in CSR form in both
// directions. Adjacency lists are sorted by PaperIndex.
class CitationGraph {
 public:
  CitationGraph() = default;

  std::size_t paper_count() const { return in_degree_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }

  std::span<const PaperIndex> references(PaperIndex p) const {
    return {out_targets_.data() + out_offsets_[p],
            out_targets_.data() + out_offsets_[p + 1]};
  }
  std::span<const PaperIndex> citers(PaperIndex p) const {
    return {in_sources_.data() + in_offsets_[p],
            in_sources_.data() + in_offsets_[p + 1]};
  }
  std::uint32_t out_degree(PaperIndex p) const {
    return static_cast<std::uint32_t>(out_offsets_[p + 1] - out_offsets_[p]);
  }
  std::uint32_t in_degree(PaperIndex p) const { return in_degree_[p]; }
  std::span<const std::uint32_t> in_degrees() const { return in_degree_; }

  // A paper has citation information once something cites it; only cited
  // papers can have co-cited neighbors.
  bool has_citation_info(PaperIndex p) const { return in_degree(p) > 0; }

 private:
  friend CitationGraph build_graph(const PaperTable&, const EdgeList&,
                                   GraphBuildStats*);
  friend CitationGraph build_graph_from_indices(
      std::size_t, std::vector<std::pair<PaperIndex, PaperIndex>>,
      GraphBuildStats*);

  std::vector<std::uint64_t> out_offsets_{0};
  std::vector<PaperIndex> out_targets_;
  std::vector<std::uint64_t> in_offsets_{0};
  std::vector<PaperIndex> in_sources_;
  std::vector<std::uint32_t> in_degree_;
};

// Drops self-loops, duplicate edges, and edges naming IDs absent from
// `papers`; each is counted in `stats` when given.
CitationGraph build_graph(const PaperTable& papers, const EdgeList& edges,
                          GraphBuildStats* stats = nullptr);

// Same cleaning rules over already-resolved indices (< paper_count).
CitationGraph build_graph_from_indices(
    std::size_t paper_count,
    std::vector<std::pair<PaperIndex, PaperIndex>> edges,
    GraphBuildStats* stats = nullptr);

struct IngestSummary {
  std::size_t papers = 0;
  std::size_t edges = 0;
  std::size_t duplicate_papers = 0;
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
  std::size_t unknown_id_edges = 0;
  std::size_t malformed_rows = 0;
  std::size_t year_out_of_range = 0;

  std::size_t warnings() const {
    return duplicate_papers + duplicate_edges + self_loops + unknown_id_edges +
           malformed_rows + year_out_of_range;
  }
  // Single line, space separated key=value pairs.
  std::string to_line() const;
};

struct Dataset {
  PaperTable papers;
  CitationGraph graph;
  IngestSummary summary;
};

Dataset load_dataset(const std::filesystem::path& papers_path,
                     const std::filesystem::path& references_path,
                     const PaperParseOptions& options = {});

}  // namespace citerank
