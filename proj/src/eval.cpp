#include "citerank/eval.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "citerank/error.hpp"

namespace citerank {
namespace {

JudgmentSet parse_judgments_impl(std::istream& in, const std::string& source) {
  JudgmentSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    ++set.stats.rows;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      ++set.stats.malformed;
      continue;
    }
    std::string better = line.substr(0, tab);
    std::string worse = line.substr(tab + 1);
    if (better == worse) {
      ++set.stats.duplicates;
      continue;
    }
    set.pairs.emplace_back(std::move(better), std::move(worse));
  }
  if (in.bad()) throw Error(Module::eval, "read failure in '" + source + "'");
  if (set.pairs.empty()) {
    throw Error(Module::eval, "no valid judgment pairs in '" + source + "'");
  }
  return set;
}

}  // namespace

JudgmentSet parse_judgments(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Module::eval, "cannot read '" + path.string() + "'");
  return parse_judgments_impl(in, path.string());
}

JudgmentSet parse_judgments(std::istream& in) {
  return parse_judgments_impl(in, "<stream>");
}

AgreementReport agreement(const IdIndex& ids, std::span<const double> scores,
                          const JudgmentSet& judgments) {
  AgreementReport report;
  report.count = judgments.count();
  for (const auto& [better, worse] : judgments.pairs) {
    const auto b = ids.find(better);
    const auto w = ids.find(worse);
    if (!b || !w || *b >= scores.size() || *w >= scores.size()) {
      ++report.missing;
      continue;
    }
    const double sb = scores[*b];
    const double sw = scores[*w];
    if (sb > sw) {
      ++report.agree;
    } else if (sb < sw) {
      ++report.disagree;
    } else {
      ++report.tie;
    }
  }
  if (report.missing == report.count) {
    throw Error(Module::eval,
                "no judgment pair overlaps the scored papers (" +
                    std::to_string(report.count) + " pairs, all missing)");
  }
  const double judged = static_cast<double>(report.count - report.missing);
  report.agreement =
      (static_cast<double>(report.agree) + 0.5 * static_cast<double>(report.tie)) /
      judged;
  return report;
}

std::string AgreementReport::to_line() const {
  std::ostringstream out;
  out << "agreement=" << format_shortest(agreement) << " agree=" << agree
      << " disagree=" << disagree << " tie=" << tie << " missing=" << missing;
  return out.str();
}

void AgreementReport::write_csv(std::ostream& out) const {
  out << "agreement,agree,disagree,tie,missing,count\n"
      << format_shortest(agreement) << ',' << agree << ',' << disagree << ','
      << tie << ',' << missing << ',' << count << '\n';
}

}  // namespace citerank
