#include <gtest/gtest.h>

#include <set>

#include "tthue/search.hpp"

using namespace tthue;

namespace {

SearchGrid cell(long n, long s, long t, long y_max) {
  SearchGrid g;
  g.n = {n, n};
  g.s = {s, s};
  g.t = {t, t};
  g.y_max = y_max;
  return g;
}

std::set<std::pair<long, long>> pairs(const SearchResult& r) {
  std::set<std::pair<long, long>> out;
  for (const Solution& s : r.records) out.insert({s.x.get_si(), s.y.get_si()});
  return out;
}

}  // namespace

TEST(Search, TrivialSolutionsOfTheNoTwistCell) {
  const auto p = pairs(enumerate_solutions(cell(3, 1, 1, 50)));
  for (auto xy : {std::pair<long, long>{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) EXPECT_TRUE(p.count(xy)) << xy.first;
}

TEST(Search, UntwistedCellContainsKnownSolution) {
  const SearchResult r = enumerate_solutions(cell(3, 1, 0, 5));
  EXPECT_TRUE(pairs(r).count({-1, 1}));
  EXPECT_TRUE(r.stats.completeness_caveat);
}

TEST(Search, EmptyRangesGiveEmptyResults) {
  SearchGrid g = cell(3, 1, 0, 5);
  g.s = {1, 0};
  const SearchResult r = enumerate_solutions(g);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.stats.cells, 0);
}

TEST(Search, EverySolutionIsGenuine) {
  SearchGrid g;
  g.n = {3, 6};
  g.s = {-2, 2};
  g.t = {-2, 2};
  g.y_max = 100;
  const SearchResult r = enumerate_solutions(g);
  EXPECT_GT(r.records.size(), 0u);
  for (const Solution& s : r.records) {
    ASSERT_EQ(abs(evaluate_form(s.n, s.s, s.t, s.x, s.y)), 1);
    ASSERT_TRUE(s.record.has_value());
  }
}

TEST(Search, NegationSymmetry) {
  const auto p = pairs(enumerate_solutions(cell(4, 2, -1, 200)));
  for (auto [x, y] : p) EXPECT_TRUE(p.count({-x, -y})) << x << " " << y;
}

TEST(Search, DeterministicAcrossThreadCounts) {
  SearchGrid g;
  g.n = {3, 5};
  g.s = {-2, 2};
  g.t = {-2, 2};
  g.y_max = 40;
  g.threads = 1;
  const SearchResult a = enumerate_solutions(g);
  g.threads = 4;
  const SearchResult b = enumerate_solutions(g);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) ASSERT_EQ(a.records[i].key(), b.records[i].key());
  EXPECT_EQ(a.stats.candidates, b.stats.candidates);
}

TEST(Search, RequireConditionFiltersCells) {
  SearchGrid g;
  g.n = {3, 3};
  g.s = {-12, 12};
  g.t = {-12, 12};
  g.y_max = 1;
  g.classify = false;
  g.epsilon = Epsilon(mpq_class(1, 2));
  g.require_condition = true;
  const SearchResult r = enumerate_solutions(g);
  for (const Solution& s : r.records) ASSERT_TRUE(check_condition(s.s, s.t, *g.epsilon));
  EXPECT_FALSE(r.stats.completeness_caveat);
  g.epsilon.reset();
  EXPECT_THROW(enumerate_solutions(g), PreconditionFailed);
}

TEST(Search, InvalidGrids) {
  EXPECT_THROW(enumerate_solutions(cell(2, 1, 0, 5)), DomainError);
  EXPECT_THROW(enumerate_solutions(cell(3, 1, 0, 0)), DomainError);
}

TEST(Exhaustive, ZeroBox) {
  const SearchResult r = exhaustive_scan(3, 1, 0, 0, 0);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.stats.candidates, 1);
}

TEST(Exhaustive, Guard) {
  EXPECT_THROW(exhaustive_scan(3, 1, 0, 100000, 10000), GuardViolation);
  EXPECT_THROW(exhaustive_scan(3, 1, 0, -1, 5), DomainError);
}

TEST(Exhaustive, AgreesWithWindowed) {
  SearchGrid g;
  g.n = {3, 4};
  g.s = {-2, 2};
  g.t = {-2, 2};
  g.y_max = 30;
  const StrategyComparison c = compare_strategies(g, 30);
  EXPECT_TRUE(c.equal);
  EXPECT_EQ(c.windowed_count, c.exhaustive_count);
  EXPECT_GT(c.exhaustive_count, 0);
}

TEST(Exhaustive, DegenerateAndSingleCells) {
  EXPECT_TRUE(compare_strategies(cell(3, 0, 0, 10), 10).equal);
  EXPECT_TRUE(compare_strategies(cell(9, 3, -2, 15), 60).equal);
}
