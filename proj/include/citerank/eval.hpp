#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citerank/graph_ingest.hpp"
#include "citerank/metrics.hpp"
#include "citerank/ranking.hpp"

namespace citerank {

// Pairwise "better is more important than worse" judgments, in file order.
struct JudgmentSet {
  std::vector<std::pair<std::string, std::string>> pairs;
  ParseStats stats;  // malformed counts bad rows, duplicates counts a == b

  std::size_t count() const { return pairs.size(); }
};

// Rows are `better_id<TAB>worse_id`. Reflexive and malformed rows are skipped
// and counted. Throws Error(eval) if the file is unreadable or has no pairs.
JudgmentSet parse_judgments(const std::filesystem::path& path);
JudgmentSet parse_judgments(std::istream& in);

struct AgreementReport {
  double agreement = 0.0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t tie = 0;
  std::size_t missing = 0;
  std::size_t count = 0;

  // agreement=<r> agree=<n> disagree=<n> tie=<n> missing=<n>
  std::string to_line() const;
  void write_csv(std::ostream& out) const;
};

// Ties count half. Pairs naming a paper without a score are reported as
// missing and left out of the denominator. Throws Error(eval) when every
// pair is missing.
AgreementReport agreement(const IdIndex& ids, std::span<const double> scores,
                          const JudgmentSet& judgments);

inline AgreementReport agreement(const ScoreTable& scores,
                                 const PaperTable& papers,
                                 const JudgmentSet& judgments) {
  return agreement(papers.ids, scores.scores, judgments);
}

inline AgreementReport agreement(const ProbabilityTable& probs,
                                 const PaperTable& papers,
                                 const JudgmentSet& judgments) {
  return agreement(papers.ids, probs.probs, judgments);
}

inline AgreementReport agreement(const Submission& submission,
                                 const JudgmentSet& judgments) {
  return agreement(submission.ids, submission.probs, judgments);
}

}  // namespace citerank
