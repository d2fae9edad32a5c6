#include "citerank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string>

#include "citerank/error.hpp"

namespace citerank {
namespace {

// Engine output is specified bit-for-bit by the standard; the distributions
// are not, so draws are derived from raw output here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  // Uniform in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Geometric with the given mean: support {1, 2, ...} when mean >= 1,
  // {0, 1, ...} otherwise.
  std::uint64_t geometric(double mean) {
    const bool shifted = mean >= 1.0;
    const double excess = shifted ? mean - 1.0 : mean;
    if (excess <= 0.0) return shifted ? 1 : 0;
    const double q = 1.0 / (1.0 + excess);  // success probability
    const double u = 1.0 - uniform();       // (0, 1]
    const auto k = static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-q)));
    return k + (shifted ? 1 : 0);
  }

 private:
  std::mt19937_64 engine_;
};

// Prefix sums over non-negative weights with weighted sampling.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0) {
    while ((step_ << 1) <= n) step_ <<= 1;
  }

  void add(std::size_t i, double delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  double prefix(std::size_t end) const {
    double s = 0.0;
    for (; end > 0; end -= end & (~end + 1)) s += tree_[end];
    return s;
  }

  // Smallest i with prefix(i + 1) > target.
  std::size_t find(double target) const {
    std::size_t pos = 0;
    for (std::size_t step = step_; step > 0; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<double> tree_;
  std::size_t step_ = 1;
};

std::string paper_token(std::size_t i, std::size_t width) {
  std::string digits = std::to_string(i);
  return "P" + std::string(width > digits.size() ? width - digits.size() : 0, '0') +
         digits;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Module::synth, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void SynthParams::validate() const {
  if (paper_count == 0) throw Error(Module::synth, "paper_count must be > 0");
  if (min_year > max_year) {
    throw Error(Module::synth, "min_year must not exceed max_year");
  }
  if (min_year < kMinYear || max_year > kDefaultMaxYear) {
    throw Error(Module::synth, "years must lie in [" + std::to_string(kMinYear) +
                                   ", " + std::to_string(kDefaultMaxYear) + "]");
  }
  if (!(attachment_exponent > 0.0) || !std::isfinite(attachment_exponent)) {
    throw Error(Module::synth, "attachment_exponent must be > 0");
  }
  if (!(zero_info_fraction >= 0.0 && zero_info_fraction < 1.0)) {
    throw Error(Module::synth, "zero_info_fraction must lie in [0, 1)");
  }
  if (!(mean_out_degree > 0.0) || !std::isfinite(mean_out_degree)) {
    throw Error(Module::synth, "mean_out_degree must be > 0");
  }
  const auto zero_info = static_cast<std::size_t>(
      std::llround(zero_info_fraction * static_cast<double>(paper_count)));
  const std::size_t citing = paper_count - zero_info;
  if (citing < 2 || mean_out_degree > static_cast<double>(citing - 1)) {
    throw Error(Module::synth,
                "mean_out_degree " + std::to_string(mean_out_degree) +
                    " is infeasible: only " + std::to_string(citing) +
                    " papers take part in citation, so a reference list holds "
                    "at most " +
                    std::to_string(citing > 0 ? citing - 1 : 0) + " entries");
  }
  if (effective_rank_gap() >= paper_count && judgment_count > 0) {
    throw Error(Module::synth, "min_rank_gap must be below paper_count");
  }
}

std::size_t SynthParams::effective_rank_gap() const {
  if (min_rank_gap > 0) return min_rank_gap;
  return std::max<std::size_t>(1, paper_count / 10);
}

SynthOutput generate(const SynthParams& params) {
  params.validate();
  const std::size_t n = params.paper_count;
  Rng rng(params.seed);
  SynthOutput out;

  const std::size_t width = std::to_string(n - 1).size();
  const auto year_span =
      static_cast<std::uint64_t>(params.max_year - params.min_year) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    out.papers.ids.insert(paper_token(i, width));
    out.papers.years.push_back(params.min_year +
                               static_cast<std::int32_t>(rng.below(year_span)));
  }
  out.papers.stats.rows = n;

  // Pick the participating papers, then order them by (year, index).
  std::vector<PaperIndex> shuffled(n);
  std::iota(shuffled.begin(), shuffled.end(), PaperIndex{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
  }
  const auto zero_info = static_cast<std::size_t>(
      std::llround(params.zero_info_fraction * static_cast<double>(n)));
  std::vector<PaperIndex> citing(shuffled.begin(),
                                 shuffled.end() - static_cast<std::ptrdiff_t>(zero_info));
  const auto& years = out.papers.years;
  std::sort(citing.begin(), citing.end(), [&](PaperIndex a, PaperIndex b) {
    return years[a] != years[b] ? years[a] < years[b] : a < b;
  });

  // group_end[k]: one past the last position sharing citing[k]'s year.
  const std::size_t m = citing.size();
  std::vector<std::size_t> group_end(m);
  for (std::size_t k = m; k-- > 0;) {
    group_end[k] = (k + 1 < m && years[citing[k + 1]] == years[citing[k]])
                       ? group_end[k + 1]
                       : k + 1;
  }

  const double gamma = params.attachment_exponent;
  auto weight = [gamma](std::uint32_t in) {
    return std::pow(static_cast<double>(in) + 1.0, gamma);
  };
  out.in_degree.assign(n, 0);
  Fenwick tree(m);
  for (std::size_t k = 0; k < m; ++k) tree.add(k, 1.0);

  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t candidates = group_end[k] - 1;  // excluding itself
    std::uint64_t length = rng.geometric(params.mean_out_degree);
    length = std::min<std::uint64_t>(length, candidates);
    chosen.clear();
    const double total = tree.prefix(group_end[k]);
    std::uint64_t attempts = 64 * length + 64;
    while (chosen.size() < length && attempts-- > 0) {
      std::size_t pos = tree.find(rng.uniform() * total);
      pos = std::min(pos, group_end[k] - 1);
      if (pos == k || std::find(chosen.begin(), chosen.end(), pos) != chosen.end()) {
        continue;
      }
      chosen.push_back(pos);
    }
    std::vector<PaperIndex> targets;
    targets.reserve(chosen.size());
    for (std::size_t pos : chosen) {
      const PaperIndex t = citing[pos];
      const double before = weight(out.in_degree[t]);
      ++out.in_degree[t];
      tree.add(pos, weight(out.in_degree[t]) - before);
      targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    const std::string& from = out.papers.ids.token(citing[k]);
    for (PaperIndex t : targets) {
      out.edges.edges.emplace_back(from, out.papers.ids.token(t));
    }
  }
  out.edges.stats.rows = out.edges.edges.size();

  out.planted_rank.resize(n);
  std::iota(out.planted_rank.begin(), out.planted_rank.end(), PaperIndex{0});
  std::sort(out.planted_rank.begin(), out.planted_rank.end(),
            [&](PaperIndex a, PaperIndex b) {
              if (out.in_degree[a] != out.in_degree[b]) {
                return out.in_degree[a] > out.in_degree[b];
              }
              return out.papers.ids.token(a) < out.papers.ids.token(b);
            });

  if (params.judgment_count > 0) {
    const std::size_t gap = params.effective_rank_gap();
    std::uint64_t attempts = 1000 * static_cast<std::uint64_t>(params.judgment_count);
    while (out.judgments.pairs.size() < params.judgment_count && attempts-- > 0) {
      const std::size_t i = rng.below(n - gap);
      const std::size_t j = i + gap + rng.below(n - gap - i);
      const PaperIndex better = out.planted_rank[i];
      const PaperIndex worse = out.planted_rank[j];
      if (out.in_degree[better] <= out.in_degree[worse]) continue;
      out.judgments.pairs.emplace_back(out.papers.ids.token(better),
                                       out.papers.ids.token(worse));
    }
    out.judgments.stats.rows = out.judgments.pairs.size();
    if (out.judgments.pairs.empty()) {
      throw Error(Module::synth,
                  "no judgment pair with a planted in-degree difference exists "
                  "at rank gap " + std::to_string(gap));
    }
  }
  return out;
}

SynthPaths synth_paths(const std::filesystem::path& dir) {
  return {dir / "papers.tsv", dir / "references.tsv", dir / "planted_rank.txt",
          dir / "judgments.tsv"};
}

SynthPaths write_synth(const SynthOutput& output,
                       const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(Module::synth, "cannot create '" + dir.string() + "': " +
                                   ec.message());
  }
  const SynthPaths paths = synth_paths(dir);
  {
    auto f = open_out(paths.papers);
    for (PaperIndex p = 0; p < output.papers.count(); ++p) {
      f << output.papers.ids.token(p) << '\t' << output.papers.years[p] << '\n';
    }
  }
  {
    auto f = open_out(paths.references);
    for (const auto& [from, to] : output.edges.edges) {
      f << from << '\t' << to << '\n';
    }
  }
  {
    auto f = open_out(paths.planted_rank);
    for (PaperIndex p : output.planted_rank) {
      f << output.papers.ids.token(p) << '\n';
    }
  }
  {
    auto f = open_out(paths.judgments);
    for (const auto& [better, worse] : output.judgments.pairs) {
      f << better << '\t' << worse << '\n';
    }
  }
  return paths;
}

}  // namespace citerank
