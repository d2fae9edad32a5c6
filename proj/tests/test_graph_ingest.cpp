#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>

#include "citerank/error.hpp"
#include "citerank/graph_ingest.hpp"
#include "test_support.hpp"

using namespace citerank;
using citerank::testing::dataset_from_text;

namespace {

PaperTable papers_from(const std::string& text) {
  std::istringstream in(text);
  return parse_papers(in);
}

EdgeList edges_from(const std::string& text) {
  std::istringstream in(text);
  return parse_references(in);
}

}  // namespace

TEST_CASE("parse_papers reads tab-separated rows") {
  const PaperTable t = papers_from("A\t2010\nB\t2011\n");
  CHECK(t.count() == 2);
  CHECK(t.record(0).id == "A");
  CHECK(t.record(1).year == 2011);
  CHECK(t.stats.duplicates == 0);
}

TEST_CASE("parse_papers keeps the first duplicate and counts the rest") {
  const PaperTable t = papers_from("A\t2010\nA\t2012\n");
  CHECK(t.count() == 1);
  CHECK(t.years[0] == 2010);
  CHECK(t.stats.duplicates == 1);
}

TEST_CASE("parse_papers skips malformed and out-of-range rows") {
  const PaperTable t = papers_from(
      "A\t2010\nB\nC\tnineteen\nD\t1499\nE\t2101\nF\t2000\textra\n"
      "G\t2011\r\n\n");
  CHECK(t.count() == 2);
  CHECK(t.stats.malformed == 3);
  CHECK(t.stats.year_out_of_range == 2);
  CHECK(t.ids.find("G").has_value());

  const std::string long_id(kMaxIdLength + 1, 'x');
  const PaperTable u = papers_from(long_id + "\t2000\nok\t2000\n");
  CHECK(u.count() == 1);
  CHECK(u.stats.malformed == 1);
}

TEST_CASE("parse_papers fails on empty input and unreadable files") {
  CHECK_THROWS_AS(papers_from(""), Error);
  CHECK_THROWS_AS(papers_from("bad row\n"), Error);
  try {
    parse_papers(std::filesystem::path("/nonexistent/papers.tsv"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.module() == Module::ingest);
    CHECK(std::string(e.what()).find("/nonexistent/papers.tsv") !=
          std::string::npos);
  }
}

TEST_CASE("parse_references preserves row order and duplicates") {
  const EdgeList e = edges_from("D\tA\nD\tB\n");
  REQUIRE(e.edges.size() == 2);
  CHECK(e.edges[0] == std::pair<std::string, std::string>{"D", "A"});
  CHECK(e.edges[1] == std::pair<std::string, std::string>{"D", "B"});

  CHECK(edges_from("D\tA\nD\tA\n").edges.size() == 2);

  const EdgeList bad = edges_from("D\nD\tA\n");
  CHECK(bad.edges.size() == 1);
  CHECK(bad.stats.malformed == 1);
  CHECK_THROWS_AS(parse_references(std::filesystem::path("/nonexistent/r.tsv")),
                  Error);
}

TEST_CASE("build_graph drops self-loops, duplicates and unknown IDs") {
  const PaperTable papers = papers_from("A\t2010\nB\t2010\nD\t2011\n");
  GraphBuildStats stats;
  const CitationGraph g =
      build_graph(papers, edges_from("D\tA\nD\tB\nD\tA\nD\tD\n"), &stats);
  CHECK(g.edge_count() == 2);
  CHECK(stats.duplicate_edges == 1);
  CHECK(stats.self_loops == 1);
  CHECK(stats.unknown_id_edges == 0);

  const PaperTable single = papers_from("A\t2010\n");
  GraphBuildStats s2;
  const CitationGraph g2 = build_graph(single, edges_from("A\tZ\n"), &s2);
  CHECK(g2.edge_count() == 0);
  CHECK(s2.unknown_id_edges == 1);
}

TEST_CASE("the five-paper reference graph") {
  const Dataset d = citerank::testing::g0();
  CHECK(d.graph.paper_count() == 5);
  CHECK(d.graph.edge_count() == 4);
  const PaperIndex a = *d.papers.ids.find("A");
  const PaperIndex dd = *d.papers.ids.find("D");
  CHECK(d.graph.in_degree(a) == 2);
  CHECK(d.graph.out_degree(dd) == 2);
  CHECK(d.graph.has_citation_info(a));
  CHECK_FALSE(d.graph.has_citation_info(dd));
  CHECK(d.graph.citers(a).size() == 2);
}

TEST_CASE("degree sums and in-degree match a brute-force recount") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto raw = citerank::testing::random_dataset(seed, 60, 900);
    const Dataset d = dataset_from_text(raw.papers_text, raw.references_text);
    const CitationGraph& g = d.graph;

    std::size_t out_sum = 0, in_sum = 0;
    for (PaperIndex p = 0; p < g.paper_count(); ++p) {
      out_sum += g.out_degree(p);
      in_sum += g.in_degree(p);
      const auto refs = g.references(p);
      CHECK(std::is_sorted(refs.begin(), refs.end()));
      CHECK(std::adjacent_find(refs.begin(), refs.end()) == refs.end());
      CHECK(std::find(refs.begin(), refs.end(), p) == refs.end());
    }
    CHECK(out_sum == g.edge_count());
    CHECK(in_sum == g.edge_count());

    // Recount distinct citers from the raw rows.
    std::set<std::pair<std::string, std::string>> distinct;
    std::istringstream rows(raw.references_text);
    std::string a, b;
    while (rows >> a >> b) {
      if (a != b) distinct.emplace(a, b);
    }
    std::vector<std::size_t> expected(g.paper_count(), 0);
    for (const auto& [from, to] : distinct) ++expected[*d.papers.ids.find(to)];
    for (PaperIndex p = 0; p < g.paper_count(); ++p) {
      CHECK(g.in_degree(p) == expected[p]);
    }
    CHECK(distinct.size() == g.edge_count());
  }
}

TEST_CASE("rebuilding from the same input is deterministic") {
  const auto raw = citerank::testing::random_dataset(7, 200, 2000);
  const Dataset x = dataset_from_text(raw.papers_text, raw.references_text);
  const Dataset y = dataset_from_text(raw.papers_text, raw.references_text);
  REQUIRE(x.graph.paper_count() == y.graph.paper_count());
  for (PaperIndex p = 0; p < x.graph.paper_count(); ++p) {
    CHECK(x.papers.ids.token(p) == y.papers.ids.token(p));
    const auto rx = x.graph.references(p);
    const auto ry = y.graph.references(p);
    CHECK(std::equal(rx.begin(), rx.end(), ry.begin(), ry.end()));
  }
}

TEST_CASE("load_dataset produces a one-line summary with every count") {
  citerank::testing::ScratchDir dir("ingest");
  citerank::testing::write_file(dir / "p.tsv", "A\t2010\nB\t2011\nB\t2012\nbad\n");
  citerank::testing::write_file(dir / "r.tsv", "B\tA\nB\tA\nA\tA\nA\tQ\nx\n");
  const Dataset d = load_dataset(dir / "p.tsv", dir / "r.tsv");
  CHECK(d.summary.to_line() ==
        "papers=2 edges=1 duplicate_papers=1 duplicate_edges=1 self_loops=1 "
        "unknown_id_edges=1 malformed_rows=2 year_out_of_range=0");
  CHECK(d.summary.warnings() == 6);
}
