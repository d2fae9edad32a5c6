#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "citerank/graph_ingest.hpp"
#include "citerank/metrics.hpp"

namespace citerank {

// Scores mapped into [0, 1] without changing their order.
struct ProbabilityTable {
  Metric source_metric = Metric::citations;
  std::vector<double> probs;  // indexed by PaperIndex

  std::size_t size() const { return probs.size(); }
};

// Min-max normalization; a constant table maps to 0.5 everywhere.
// Throws Error(ranking) on an empty table or non-finite scores.
ProbabilityTable normalize(const ScoreTable& scores);

struct RankedEntry {
  PaperIndex paper;
  double prob;
};

struct RankedList {
  std::vector<RankedEntry> entries;
};

// Non-increasing by probability; ties go to the smaller ID token.
RankedList rank(const ProbabilityTable& probs, const IdIndex& ids);

// `paper_id<TAB>probability` lines in rank order, 9 significant digits.
void write_submission(const RankedList& list, const IdIndex& ids,
                      const std::filesystem::path& path);
void write_submission(const RankedList& list, const IdIndex& ids,
                      std::ostream& out);

std::string format_probability(double prob);

// A submission read back from disk, in file order.
struct Submission {
  IdIndex ids;
  std::vector<double> probs;
};

Submission parse_submission(const std::filesystem::path& path);
Submission parse_submission(std::istream& in);

}  // namespace citerank
