#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "citerank/error.hpp"
#include "citerank/ranking.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace citerank;

namespace {

struct Fixture {
  IdIndex ids;
  ScoreTable scores;
};

Fixture make(const std::vector<std::pair<std::string, double>>& rows) {
  Fixture f;
  for (const auto& [id, s] : rows) {
    f.ids.insert(id);
    f.scores.scores.push_back(s);
  }
  return f;
}

std::vector<std::string> order_of(const RankedList& list, const IdIndex& ids) {
  std::vector<std::string> out;
  for (const auto& e : list.entries) out.push_back(ids.token(e.paper));
  return out;
}

}  // namespace

TEST_CASE("min-max normalization") {
  const Fixture f = make({{"A", 2}, {"B", 1}, {"C", 0}});
  CHECK(normalize(f.scores).probs == std::vector<double>{1.0, 0.5, 0.0});

  const Fixture flat = make({{"A", 3}, {"B", 3}});
  CHECK(normalize(flat.scores).probs == std::vector<double>{0.5, 0.5});

  CHECK_THROWS_AS(normalize(ScoreTable{}), Error);
  Fixture bad = make({{"A", 1}, {"B", std::nan("")}});
  CHECK_THROWS_AS(normalize(bad.scores), Error);
}

TEST_CASE("normalization never reorders scores") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-50.0, 900.0);
  for (int round = 0; round < 20; ++round) {
    ScoreTable t;
    for (int i = 0; i < 500; ++i) t.scores.push_back(i % 7 == 0 ? 4.0 : dist(rng));
    const ProbabilityTable p = normalize(t);
    for (std::size_t i = 0; i < 500; ++i) {
      CHECK(p.probs[i] >= 0.0);
      CHECK(p.probs[i] <= 1.0);
      for (std::size_t j = i + 1; j < 500; j += 37) {
        const double ds = t.scores[i] - t.scores[j];
        const double dp = p.probs[i] - p.probs[j];
        CHECK((ds > 0) == (dp > 0));
        CHECK((ds < 0) == (dp < 0));
      }
    }
  }
}

TEST_CASE("rank breaks ties by ascending ID") {
  Fixture f = make({{"B", 0.5}, {"A", 0.5}, {"C", 1.0}});
  ProbabilityTable p{Metric::srcr, f.scores.scores};
  CHECK(order_of(rank(p, f.ids), f.ids) == std::vector<std::string>{"C", "A", "B"});
}

TEST_CASE("rank output is a permutation in non-increasing order") {
  std::mt19937_64 rng(10000);
  IdIndex ids;
  ProbabilityTable p;
  for (int i = 0; i < 10000; ++i) {
    ids.insert("p" + std::to_string(rng()));
    p.probs.push_back(static_cast<double>(rng() % 300) / 299.0);
  }
  const RankedList list = rank(p, ids);
  REQUIRE(list.entries.size() == 10000);
  std::vector<PaperIndex> seen;
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    seen.push_back(list.entries[i].paper);
    CHECK(list.entries[i].prob == p.probs[list.entries[i].paper]);
    if (i > 0) {
      const auto& prev = list.entries[i - 1];
      const auto& cur = list.entries[i];
      CHECK(prev.prob >= cur.prob);
      if (prev.prob == cur.prob) CHECK(ids.token(prev.paper) < ids.token(cur.paper));
    }
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == i);
}

TEST_CASE("submission lines carry nine significant digits") {
  Fixture f = make({{"A", 1.0}, {"B", 0.5}});
  ProbabilityTable p{Metric::citations, f.scores.scores};
  std::ostringstream out;
  write_submission(rank(p, f.ids), f.ids, out);
  CHECK(out.str() == "A\t1.00000000\nB\t0.500000000\n");
  CHECK(format_probability(0.0) == "0.00000000");
  CHECK(format_probability(1.0 / 3.0) == "0.333333333");

  std::ostringstream sink;
  CHECK_THROWS_AS(write_submission(RankedList{}, f.ids, sink), Error);
  CHECK_THROWS_AS(write_submission(rank(p, f.ids), f.ids,
                                   std::filesystem::path("/nonexistent/dir/s.tsv")),
                  Error);
}

TEST_CASE("submission round trip") {
  std::mt19937_64 rng(77);
  IdIndex ids;
  ProbabilityTable p;
  for (int i = 0; i < 2000; ++i) {
    ids.insert("W" + std::to_string(i * 7919 % 2003));
    p.probs.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  }
  const RankedList list = rank(p, ids);
  citerank::testing::ScratchDir dir("ranking");
  write_submission(list, ids, dir / "s.tsv");
  const Submission back = parse_submission(dir / "s.tsv");
  REQUIRE(back.probs.size() == list.entries.size());
  for (std::size_t i = 0; i < back.probs.size(); ++i) {
    CHECK(back.ids.token(static_cast<PaperIndex>(i)) == ids.token(list.entries[i].paper));
    CHECK(format_probability(back.probs[i]) == format_probability(list.entries[i].prob));
  }
  // Writing what was read reproduces the file byte for byte.
  ProbabilityTable again{Metric::citations, back.probs};
  write_submission(rank(again, back.ids), back.ids, dir / "t.tsv");
  CHECK(citerank::testing::read_file(dir / "s.tsv") ==
        citerank::testing::read_file(dir / "t.tsv"));
}

TEST_CASE("submission parser rejects bad input") {
  std::istringstream dup("A\t0.5\nA\t0.4\n");
  CHECK_THROWS_AS(parse_submission(dup), Error);
  std::istringstream bad("A\tzero\n");
  CHECK_THROWS_AS(parse_submission(bad), Error);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_submission(empty), Error);
  CHECK_THROWS_AS(parse_submission(std::filesystem::path("/nonexistent/s.tsv")), Error);
}
