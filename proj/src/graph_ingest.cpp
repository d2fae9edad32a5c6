#include "citerank/graph_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "citerank/error.hpp"

namespace citerank {
namespace {

// Splits a line into exactly two TAB-separated non-empty fields.
bool split_pair(std::string_view line, std::string_view& first,
                std::string_view& second) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) return false;
  first = line.substr(0, tab);
  second = line.substr(tab + 1);
  if (second.find('\t') != std::string_view::npos) return false;
  return !first.empty() && !second.empty();
}

bool valid_id(std::string_view id) {
  return !id.empty() && id.size() <= kMaxIdLength;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Module::ingest, "cannot read '" + path.string() + "'");
  }
  return in;
}

PaperTable parse_papers_impl(std::istream& in, const PaperParseOptions& options,
                             const std::string& source) {
  PaperTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++table.stats.rows;
    std::string_view id, year_text;
    std::int32_t year = 0;
    if (!split_pair(line, id, year_text) || !valid_id(id)) {
      ++table.stats.malformed;
      continue;
    }
    const auto [end, ec] = std::from_chars(
        year_text.data(), year_text.data() + year_text.size(), year);
    if (ec != std::errc() || end != year_text.data() + year_text.size()) {
      ++table.stats.malformed;
      continue;
    }
    if (year < kMinYear || year > options.max_year) {
      ++table.stats.year_out_of_range;
      continue;
    }
    if (!table.ids.insert(id).second) {
      ++table.stats.duplicates;
      continue;
    }
    table.years.push_back(year);
  }
  if (in.bad()) throw Error(Module::ingest, "read failure in '" + source + "'");
  if (table.count() == 0) {
    throw Error(Module::ingest, "empty dataset: no valid paper rows in '" +
                                    source + "'");
  }
  return table;
}

EdgeList parse_references_impl(std::istream& in, const std::string& source) {
  EdgeList list;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++list.stats.rows;
    std::string_view citing, cited;
    if (!split_pair(line, citing, cited) || !valid_id(citing) ||
        !valid_id(cited)) {
      ++list.stats.malformed;
      continue;
    }
    list.edges.emplace_back(citing, cited);
  }
  if (in.bad()) throw Error(Module::ingest, "read failure in '" + source + "'");
  return list;
}

}  // namespace

std::pair<PaperIndex, bool> IdIndex::insert(std::string_view token) {
  if (auto it = lookup_.find(token); it != lookup_.end()) {
    return {it->second, false};
  }
  const auto index = static_cast<PaperIndex>(tokens_.size());
  tokens_.emplace_back(token);
  lookup_.emplace(tokens_.back(), index);
  return {index, true};
}

std::optional<PaperIndex> IdIndex::find(std::string_view token) const {
  if (auto it = lookup_.find(token); it != lookup_.end()) return it->second;
  return std::nullopt;
}

std::int32_t PaperTable::max_year() const {
  return years.empty() ? kMinYear : *std::max_element(years.begin(), years.end());
}

PaperTable parse_papers(const std::filesystem::path& path,
                        const PaperParseOptions& options) {
  auto in = open_or_throw(path);
  return parse_papers_impl(in, options, path.string());
}

PaperTable parse_papers(std::istream& in, const PaperParseOptions& options) {
  return parse_papers_impl(in, options, "<stream>");
}

EdgeList parse_references(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_references_impl(in, path.string());
}

EdgeList parse_references(std::istream& in) {
  return parse_references_impl(in, "<stream>");
}

CitationGraph build_graph_from_indices(
    std::size_t paper_count,
    std::vector<std::pair<PaperIndex, PaperIndex>> edges,
    GraphBuildStats* stats) {
  GraphBuildStats local;
  std::erase_if(edges, [&](const auto& e) {
    if (e.first == e.second) {
      ++local.self_loops;
      return true;
    }
    return false;
  });
  std::sort(edges.begin(), edges.end());
  const auto unique_end = std::unique(edges.begin(), edges.end());
  local.duplicate_edges = static_cast<std::size_t>(edges.end() - unique_end);
  edges.erase(unique_end, edges.end());

  CitationGraph g;
  g.out_offsets_.assign(paper_count + 1, 0);
  g.in_offsets_.assign(paper_count + 1, 0);
  g.in_degree_.assign(paper_count, 0);
  g.out_targets_.reserve(edges.size());
  for (const auto& [citing, cited] : edges) {
    ++g.out_offsets_[citing + 1];
    ++g.in_degree_[cited];
    g.out_targets_.push_back(cited);
  }
  for (std::size_t p = 0; p < paper_count; ++p) {
    g.out_offsets_[p + 1] += g.out_offsets_[p];
    g.in_offsets_[p + 1] = g.in_offsets_[p] + g.in_degree_[p];
  }
  // Edges are sorted by citing paper, so filling buckets in order leaves
  // every citer list sorted.
  g.in_sources_.resize(edges.size());
  std::vector<std::uint64_t> cursor(g.in_offsets_.begin(),
                                    g.in_offsets_.end() - 1);
  for (const auto& [citing, cited] : edges) {
    g.in_sources_[cursor[cited]++] = citing;
  }
  if (stats != nullptr) *stats = local;
  return g;
}

CitationGraph build_graph(const PaperTable& papers, const EdgeList& edges,
                          GraphBuildStats* stats) {
  std::vector<std::pair<PaperIndex, PaperIndex>> resolved;
  resolved.reserve(edges.edges.size());
  std::size_t unknown = 0;
  for (const auto& [citing, cited] : edges.edges) {
    const auto from = papers.ids.find(citing);
    const auto to = papers.ids.find(cited);
    if (!from || !to) {
      ++unknown;
      continue;
    }
    resolved.emplace_back(*from, *to);
  }
  CitationGraph g =
      build_graph_from_indices(papers.count(), std::move(resolved), stats);
  if (stats != nullptr) stats->unknown_id_edges = unknown;
  return g;
}

std::string IngestSummary::to_line() const {
  std::ostringstream out;
  out << "papers=" << papers << " edges=" << edges
      << " duplicate_papers=" << duplicate_papers
      << " duplicate_edges=" << duplicate_edges << " self_loops=" << self_loops
      << " unknown_id_edges=" << unknown_id_edges
      << " malformed_rows=" << malformed_rows
      << " year_out_of_range=" << year_out_of_range;
  return out.str();
}

Dataset load_dataset(const std::filesystem::path& papers_path,
                     const std::filesystem::path& references_path,
                     const PaperParseOptions& options) {
  Dataset data;
  data.papers = parse_papers(papers_path, options);
  const EdgeList edges = parse_references(references_path);
  GraphBuildStats build;
  data.graph = build_graph(data.papers, edges, &build);

  IngestSummary& s = data.summary;
  s.papers = data.papers.count();
  s.edges = data.graph.edge_count();
  s.duplicate_papers = data.papers.stats.duplicates;
  s.duplicate_edges = build.duplicate_edges;
  s.self_loops = build.self_loops;
  s.unknown_id_edges = build.unknown_id_edges;
  s.malformed_rows = data.papers.stats.malformed + edges.stats.malformed;
  s.year_out_of_range = data.papers.stats.year_out_of_range;
  return data;
}

}  // namespace citerank
