#include "citerank/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "citerank/error.hpp"
#include "citerank/kernels.hpp"

namespace citerank {

ProbabilityTable normalize(const ScoreTable& scores) {
  if (scores.size() == 0) {
    throw Error(Module::ranking, "cannot normalize an empty score table");
  }
  double lo = scores.scores.front();
  double hi = lo;
  for (double s : scores.scores) {
    if (!std::isfinite(s)) {
      throw Error(Module::ranking, "score table contains a non-finite value");
    }
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  ProbabilityTable table;
  table.source_metric = scores.metric;
  if (hi == lo) {
    table.probs.assign(scores.size(), 0.5);
    return table;
  }
  table.probs.resize(scores.size());
  kernels::active().rescale(scores.scores, lo, hi - lo, table.probs);
  return table;
}

RankedList rank(const ProbabilityTable& probs, const IdIndex& ids) {
  std::vector<PaperIndex> order(probs.size());
  std::iota(order.begin(), order.end(), PaperIndex{0});
  std::sort(order.begin(), order.end(), [&](PaperIndex a, PaperIndex b) {
    if (probs.probs[a] != probs.probs[b]) return probs.probs[a] > probs.probs[b];
    return ids.token(a) < ids.token(b);
  });
  RankedList list;
  list.entries.reserve(order.size());
  for (PaperIndex p : order) list.entries.push_back({p, probs.probs[p]});
  return list;
}

std::string format_probability(double prob) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%#.9g", prob);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_submission(const RankedList& list, const IdIndex& ids,
                      std::ostream& out) {
  if (list.entries.empty()) {
    throw Error(Module::ranking, "refusing to write an empty submission");
  }
  for (const RankedEntry& e : list.entries) {
    out << ids.token(e.paper) << '\t' << format_probability(e.prob) << '\n';
  }
}

void write_submission(const RankedList& list, const IdIndex& ids,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Module::ranking, "cannot write '" + path.string() + "'");
  }
  write_submission(list, ids, out);
  out.flush();
  if (!out) {
    throw Error(Module::ranking, "write failure on '" + path.string() + "'");
  }
}

namespace {

Submission parse_submission_impl(std::istream& in, const std::string& source) {
  Submission sub;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    double prob = 0.0;
    bool ok = tab != std::string::npos && tab > 0;
    if (ok) {
      const char* first = line.data() + tab + 1;
      const char* last = line.data() + line.size();
      const auto [end, ec] = std::from_chars(first, last, prob);
      ok = ec == std::errc() && end == last && std::isfinite(prob);
    }
    if (!ok) {
      throw Error(Module::ranking, "malformed submission line " +
                                       std::to_string(line_no) + " in '" +
                                       source + "'");
    }
    if (!sub.ids.insert(std::string_view(line).substr(0, tab)).second) {
      throw Error(Module::ranking, "duplicate paper id on line " +
                                       std::to_string(line_no) + " in '" +
                                       source + "'");
    }
    sub.probs.push_back(prob);
  }
  if (sub.probs.empty()) {
    throw Error(Module::ranking, "submission '" + source + "' has no entries");
  }
  return sub;
}

}  // namespace

Submission parse_submission(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Module::ranking, "cannot read '" + path.string() + "'");
  return parse_submission_impl(in, path.string());
}

Submission parse_submission(std::istream& in) {
  return parse_submission_impl(in, "<stream>");
}

}  // namespace citerank
