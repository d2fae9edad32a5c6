#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "citerank/eval.hpp"
#include "citerank/graph_ingest.hpp"

namespace citerank {

struct SynthParams {
  std::size_t paper_count = 100000;
  std::int32_t min_year = 1980;
  std::int32_t max_year = 2015;
  // Citation targets are drawn with probability proportional to
  // (in_degree + 1)^attachment_exponent.
  double attachment_exponent = 1.0;
  // Mean reference-list length of a citing paper.
  double mean_out_degree = 8.0;
  // Share of papers left out of the citation process entirely.
  double zero_info_fraction = 0.59;
  std::uint64_t seed = 42;

  std::size_t judgment_count = 10000;
  // Minimum planted-rank distance between the two papers of a judgment.
  // Zero means paper_count / 10.
  std::size_t min_rank_gap = 0;

  // Throws Error(synth) for infeasible settings.
  void validate() const;
  std::size_t effective_rank_gap() const;
};

struct SynthOutput {
  PaperTable papers;
  EdgeList edges;
  // Ground-truth importance: papers by final in-degree, then ID.
  std::vector<PaperIndex> planted_rank;
  std::vector<std::uint32_t> in_degree;
  // Pairs at least the rank gap apart whose planted in-degrees differ.
  JudgmentSet judgments;
};

// Deterministic given the params, seed included.
SynthOutput generate(const SynthParams& params);

struct SynthPaths {
  std::filesystem::path papers;
  std::filesystem::path references;
  std::filesystem::path planted_rank;
  std::filesystem::path judgments;
};

SynthPaths synth_paths(const std::filesystem::path& dir);

// Writes papers.tsv, references.tsv, planted_rank.txt and judgments.tsv.
SynthPaths write_synth(const SynthOutput& output,
                       const std::filesystem::path& dir);

}  // namespace citerank
