#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "tthue/diophantine.hpp"

namespace tthue {

struct IntRange {
  long lo = 0;
  long hi = -1;  // empty when hi < lo

  bool empty() const { return hi < lo; }
};

struct SearchGrid {
  IntRange n{3, 3}, s{0, 0}, t{0, 0};
  long y_max = 1;
  long window = 2;
  std::optional<Epsilon> epsilon;
  bool require_condition = false;
  bool classify = true;  // attach a SolutionRecord to every hit
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (!n.empty() && n.lo < 3) throw DomainError("n range must start at 3 or above");
    if (y_max < 1) throw DomainError("y_max must be positive");
    if (window < 1) throw DomainError("window must be positive");
    if (require_condition && !epsilon) throw PreconditionFailed("require_condition needs an epsilon");
  }
};

struct Solution {
  long n = 3, s = 0, t = 0;
  mpz_class x, y;
  std::optional<SolutionRecord> record;

  auto key() const { return std::make_tuple(n, s, t, y, x); }
};

enum class Strategy { windowed, exhaustive };

inline std::string to_string(Strategy s) { return s == Strategy::windowed ? "windowed" : "exhaustive"; }

struct SearchStats {
  long cells = 0;
  long candidates = 0;
  long solutions = 0;
  long undecided = 0;
  // Set when the windowed search ran on cells outside the separation
  // condition (or without one).
  bool completeness_caveat = false;
};

struct SearchResult {
  std::vector<Solution> records;  // sorted by (n, s, t, y, x)
  SearchStats stats;
  Strategy strategy = Strategy::windowed;
};

namespace detail {

struct Cell {
  long n, s, t;
};

struct CellResult {
  std::vector<Solution> hits;
  long candidates = 0;
  long undecided = 0;
};

inline void record_hit(CellResult& out, const Cell& c, const mpz_class& x, const mpz_class& y, bool classify,
                       const PrecisionPolicy& policy) {
  Solution sol{c.n, c.s, c.t, x, y, std::nullopt};
  if (classify) {
    sol.record = classify_solution(x, y, c.n, c.s, c.t, policy);
    if (sol.record->ordering != Status::pass) ++out.undecided;
  }
  out.hits.push_back(std::move(sol));
}

template <class CellFn>
SearchResult run_cells(const std::vector<Cell>& cells, unsigned threads, CellFn&& fn) {
  std::vector<CellResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) results[i] = fn(cells[i]);
  };
  unsigned count = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(1, cells.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SearchResult res;
  res.stats.cells = static_cast<long>(cells.size());
  for (auto& r : results) {
    res.stats.candidates += r.candidates;
    res.stats.undecided += r.undecided;
    for (auto& h : r.hits) res.records.push_back(std::move(h));
  }
  std::sort(res.records.begin(), res.records.end(), [](const Solution& a, const Solution& b) { return a.key() < b.key(); });
  res.stats.solutions = static_cast<long>(res.records.size());
  return res;
}

inline std::vector<Cell> grid_cells(const SearchGrid& g) {
  std::vector<Cell> cells;
  if (g.n.empty() || g.s.empty() || g.t.empty()) return cells;
  for (long n = g.n.lo; n <= g.n.hi; ++n)
    for (long s = g.s.lo; s <= g.s.hi; ++s)
      for (long t = g.t.lo; t <= g.t.hi; ++t) {
        if (g.require_condition && !check_condition(s, t, *g.epsilon)) continue;
        cells.push_back({n, s, t});
      }
  return cells;
}

// Windowed search in one cell; `x_limit` optionally clips |x|.
inline CellResult windowed_cell(const Cell& c, const SearchGrid& g, const PrecisionPolicy& policy,
                                const std::optional<mpz_class>& x_limit) {
  CellResult out;
  const NormFormCoeffs f = form_coeffs(c.n, c.s, c.t);
  const RootTriple roots = compute_roots(c.n, policy.start_bits);
  const auto alpha = alpha_enclosures(roots, c.s, c.t, policy.start_bits);
  const auto test = [&](const mpz_class& x, const mpz_class& y) {
    if (x_limit && abs(x) > *x_limit) return;
    ++out.candidates;
    if (abs(evaluate_form(f, x, y)) == 1) record_hit(out, c, x, y, g.classify, policy);
  };
  // y = 0: F(x, 0) = x^3.
  for (long x = -std::max(1L, g.window); x <= std::max(1L, g.window); ++x) test(x, 0);
  for (long yy = -g.y_max; yy <= g.y_max; ++yy) {
    if (yy == 0) continue;
    const mpz_class y(yy);
    std::set<mpz_class> xs;
    // Windows around each alpha_i y. Some |x - alpha_i y| <= 1 because
    // |beta_0 beta_1 beta_2| = 1, so radius >= 2 covers every solution.
    for (const Enclosure& a : alpha) {
      const mpz_class centre = ((a * Enclosure(yy)).midpoint() + Dyadic(1).ldexp(-1)).floor();
      for (long d = -g.window; d <= g.window; ++d) xs.insert(centre + d);
    }
    if (yy == 1 || yy == -1)
      for (long x = -std::max(1L, g.window); x <= std::max(1L, g.window); ++x) xs.insert(mpz_class(x));
    for (const mpz_class& x : xs) test(x, y);
  }
  return out;
}

}  // namespace detail

inline SearchResult enumerate_solutions(const SearchGrid& grid, const PrecisionPolicy& policy = {}) {
  grid.validate();
  const auto cells = detail::grid_cells(grid);
  SearchResult res = detail::run_cells(
      cells, grid.threads, [&](const detail::Cell& c) { return detail::windowed_cell(c, grid, policy, std::nullopt); });
  res.strategy = Strategy::windowed;
  res.stats.completeness_caveat = !grid.require_condition;
  return res;
}

inline constexpr long kExhaustiveGuard = 100000000;  // x_max * y_max

/// Full scan of |x| <= x_max, |y| <= y_max for one (n, s, t).
inline SearchResult exhaustive_scan(long n, long s, long t, long x_max, long y_max, bool classify = true,
                                    const PrecisionPolicy& policy = {}) {
  require_family_parameter(n);
  if (x_max < 0 || y_max < 0) throw DomainError("scan limits must be non-negative");
  if (x_max > 0 && y_max > kExhaustiveGuard / x_max) throw GuardViolation("x_max * y_max exceeds 10^8");
  const detail::Cell c{n, s, t};
  const NormFormCoeffs f = form_coeffs(n, s, t);
  detail::CellResult out;
  for (long y = -y_max; y <= y_max; ++y)
    for (long x = -x_max; x <= x_max; ++x) {
      ++out.candidates;
      const mpz_class X(x), Y(y);
      if (abs(evaluate_form(f, X, Y)) == 1) detail::record_hit(out, c, X, Y, classify, policy);
    }
  SearchResult res = detail::run_cells({c}, 1, [&](const detail::Cell&) { return out; });
  res.strategy = Strategy::exhaustive;
  return res;
}

struct StrategyComparison {
  bool equal = false;
  long windowed_count = 0;
  long exhaustive_count = 0;
  std::vector<Solution> only_windowed, only_exhaustive;
};

/// Windowed search (clipped to |x| <= x_max) against the exhaustive scan of
/// |x| <= x_max, |y| <= grid.y_max on every cell of the grid.
inline StrategyComparison compare_strategies(const SearchGrid& grid, long x_max, const PrecisionPolicy& policy = {}) {
  grid.validate();
  if (x_max > 0 && grid.y_max > kExhaustiveGuard / x_max) throw GuardViolation("x_max * y_max exceeds 10^8");
  SearchGrid g = grid;
  g.classify = false;
  const auto cells = detail::grid_cells(g);
  const mpz_class limit(x_max);
  const SearchResult win = detail::run_cells(
      cells, g.threads, [&](const detail::Cell& c) { return detail::windowed_cell(c, g, policy, limit); });
  const SearchResult exh = detail::run_cells(cells, g.threads, [&](const detail::Cell& c) {
    detail::CellResult out;
    const SearchResult r = exhaustive_scan(c.n, c.s, c.t, x_max, g.y_max, false, policy);
    out.hits = r.records;
    out.candidates = r.stats.candidates;
    return out;
  });
  StrategyComparison cmp;
  cmp.windowed_count = static_cast<long>(win.records.size());
  cmp.exhaustive_count = static_cast<long>(exh.records.size());
  const auto less = [](const Solution& a, const Solution& b) { return a.key() < b.key(); };
  std::set_difference(win.records.begin(), win.records.end(), exh.records.begin(), exh.records.end(),
                      std::back_inserter(cmp.only_windowed), less);
  std::set_difference(exh.records.begin(), exh.records.end(), win.records.begin(), win.records.end(),
                      std::back_inserter(cmp.only_exhaustive), less);
  cmp.equal = cmp.only_windowed.empty() && cmp.only_exhaustive.empty();
  return cmp;
}

}  // namespace tthue
