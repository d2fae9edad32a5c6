#include <doctest.h>

#include <algorithm>

#include "citerank/cocitation.hpp"
#include "citerank/error.hpp"
#include "citerank/synth.hpp"
#include "test_support.hpp"

using namespace citerank;

namespace {

SynthParams small(std::size_t papers, std::uint64_t seed) {
  SynthParams p;
  p.paper_count = papers;
  p.seed = seed;
  p.judgment_count = 50;
  return p;
}

std::size_t zero_degree(const SynthOutput& out) {
  std::vector<bool> touched(out.papers.count(), false);
  for (const auto& [from, to] : out.edges.edges) {
    touched[*out.papers.ids.find(from)] = true;
    touched[*out.papers.ids.find(to)] = true;
  }
  return static_cast<std::size_t>(std::count(touched.begin(), touched.end(), false));
}

}  // namespace

TEST_CASE("same seed, same files") {
  SynthParams p = small(5, 42);
  p.zero_info_fraction = 0.0;
  p.mean_out_degree = 1.5;
  p.judgment_count = 0;
  const SynthOutput a = generate(p);
  const SynthOutput b = generate(p);
  CHECK(a.papers.count() == 5);
  CHECK(a.edges.edges == b.edges.edges);

  citerank::testing::ScratchDir d1("synth1"), d2("synth2");
  const SynthPaths x = write_synth(generate(small(3000, 9)), d1.path());
  const SynthPaths y = write_synth(generate(small(3000, 9)), d2.path());
  using citerank::testing::read_file;
  CHECK(read_file(x.papers) == read_file(y.papers));
  CHECK(read_file(x.references) == read_file(y.references));
  CHECK(read_file(x.planted_rank) == read_file(y.planted_rank));
  CHECK(read_file(x.judgments) == read_file(y.judgments));

  const SynthOutput other = generate(small(3000, 10));
  CHECK(other.edges.edges != generate(small(3000, 9)).edges.edges);
}

TEST_CASE("citations never point to a later year") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SynthOutput out = generate(small(20000, seed));
    const auto& ids = out.papers.ids;
    for (const auto& [from, to] : out.edges.edges) {
      CHECK(out.papers.years[*ids.find(to)] <= out.papers.years[*ids.find(from)]);
    }
  }
}

TEST_CASE("zero-degree share tracks zero_info_fraction") {
  SynthParams p = small(100000, 5);
  p.zero_info_fraction = 0.59;
  const double frac = static_cast<double>(zero_degree(generate(p))) / 1e5;
  CHECK(frac >= 0.54);
  CHECK(frac <= 0.64);

  p.paper_count = 10000;
  for (double z : {0.0, 0.3, 0.8}) {
    p.zero_info_fraction = z;
    const double f = static_cast<double>(zero_degree(generate(p))) / 1e4;
    CHECK(std::fabs(f - z) <= 0.05);
  }
}

TEST_CASE("generated files ingest without warnings") {
  citerank::testing::ScratchDir dir("synth_ingest");
  const SynthOutput out = generate(small(20000, 3));
  const SynthPaths paths = write_synth(out, dir.path());
  const Dataset d = load_dataset(paths.papers, paths.references);
  CHECK(d.summary.warnings() == 0);
  CHECK(d.graph.edge_count() == out.edges.edges.size());
  for (PaperIndex p = 0; p < out.papers.count(); ++p) {
    CHECK(d.graph.in_degree(*d.papers.ids.find(out.papers.ids.token(p))) ==
          out.in_degree[p]);
  }
}

TEST_CASE("planted rank and judgments") {
  const SynthOutput out = generate(small(20000, 8));
  REQUIRE(out.planted_rank.size() == 20000);
  for (std::size_t i = 1; i < out.planted_rank.size(); ++i) {
    const PaperIndex a = out.planted_rank[i - 1], b = out.planted_rank[i];
    CHECK(out.in_degree[a] >= out.in_degree[b]);
    if (out.in_degree[a] == out.in_degree[b]) {
      CHECK(out.papers.ids.token(a) < out.papers.ids.token(b));
    }
  }
  std::vector<std::size_t> position(20000);
  for (std::size_t i = 0; i < 20000; ++i) position[out.planted_rank[i]] = i;
  CHECK(out.judgments.count() == 50);
  for (const auto& [better, worse] : out.judgments.pairs) {
    const PaperIndex b = *out.papers.ids.find(better);
    const PaperIndex w = *out.papers.ids.find(worse);
    CHECK(position[w] >= position[b] + 2000);
    CHECK(out.in_degree[b] > out.in_degree[w]);
  }
}

TEST_CASE("infeasible parameters are rejected") {
  SynthParams p = small(10, 1);
  p.mean_out_degree = 50;
  CHECK_THROWS_AS(generate(p), Error);
  p = small(0, 1);
  CHECK_THROWS_AS(generate(p), Error);
  p = small(100, 1);
  p.min_year = 2000;
  p.max_year = 1990;
  CHECK_THROWS_AS(generate(p), Error);
  p = small(100, 1);
  p.zero_info_fraction = 1.0;
  CHECK_THROWS_AS(generate(p), Error);
  p = small(100, 1);
  p.attachment_exponent = 0.0;
  CHECK_THROWS_AS(generate(p), Error);
  try {
    SynthParams q = small(10, 1);
    q.mean_out_degree = 50;
    generate(q);
  } catch (const Error& e) {
    CHECK(e.module() == Module::synth);
    CHECK(std::string(e.what()).find("infeasible") != std::string::npos);
  }
}

TEST_CASE("neighborhood size density falls off beyond the mode on log buckets") {
  // Size 0 has no place on a log-log axis, so the shape check covers sizes
  // of at least one. Buckets double in width, so compare count per unit size.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthParams p = small(100000, seed);
    p.attachment_exponent = 1.2;
    const SynthOutput out = generate(p);
    const Dataset d = [&] {
      Dataset data;
      data.papers = out.papers;
      data.graph = build_graph(out.papers, out.edges);
      return data;
    }();
    const DistributionSummary s =
        neighborhood_stats(build_neighborhoods(d.graph), d.graph, true);
    std::vector<double> density;
    for (unsigned b = 1; b <= s.histogram.rbegin()->first; ++b) {
      const auto it = s.histogram.find(b);
      const double count = it == s.histogram.end() ? 0.0 : static_cast<double>(it->second);
      const auto width = DistributionSummary::bucket_hi(b) - DistributionSummary::bucket_lo(b) + 1;
      density.push_back(count / static_cast<double>(width));
    }
    const auto mode = std::max_element(density.begin(), density.end());
    CAPTURE(seed);
    CHECK(mode - density.begin() >= 2);  // a peak past the smallest sizes
    for (auto it = mode; it + 1 != density.end(); ++it) CHECK(*it > *(it + 1));
  }
}
