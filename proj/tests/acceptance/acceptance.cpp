// Acceptance suite: one PASS/FAIL line per criterion. Exit code is the
// number of failing criteria (capped at 100).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "tthue/tthue.hpp"

using namespace tthue;

namespace {

// Pinned tolerances and limits.
constexpr mpfr_prec_t kBracketMaxBits = 1024;
constexpr long kSiegelInstances = 200;
constexpr long kNormInstances = 500;
constexpr long kSigmaElements = 1000;
constexpr long kSigmaPairs = 500;
constexpr long kDecompositionWords = 300;
constexpr long kSearchRadius = 50;
constexpr long kProdByMaxTriples = 100000;
constexpr long kBakerRandomInputs = 100;
constexpr long kCaseN = 1000000;
constexpr mpfr_prec_t kStarvedBits = 16;
const mpq_class kBakerRelTol("1/1000000000000");  // 10^-12

// 18 * 3! * 2^3 * 96^4 * log 12, from tests/oracles/oracle_values.py (mpmath, 60 digits).
const mpq_class kBakerC23("182351253448963825295547158481646750840328376292268840099737/"
                          "1000000000000000000000000000000000000000000000000");

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

PrecisionPolicy capped(mpfr_prec_t max_bits) {
  PrecisionPolicy p;
  p.max_bits = max_bits;
  return p;
}

OrderElement random_element(std::mt19937_64& rng, long n, long range) {
  std::uniform_int_distribution<long> c(-range, range);
  return {n, c(rng), c(rng), c(rng)};
}

// ---------------------------------------------------------------- 1

Outcome three_term_form() {
  for (long n = 3; n <= 100; ++n) {
    const NormFormCoeffs f = form_coeffs(n, 1, 0);
    if (f.e1 != n - 1 || f.e2 != -(n + 2) || f.e3 != 1)
      return {false, "n=" + std::to_string(n) + " gives (" + f.e1.get_str() + ", " + f.e2.get_str() + ", " +
                         f.e3.get_str() + ")"};
  }
  return {true, "n = 3..100 exact"};
}

// ---------------------------------------------------------------- 2

Outcome root_brackets() {
  Outcome o{true, ""};
  std::ostringstream d;
  for (long n : {3L, 10L, 100L, 10000L, 1000000L, 1000000000L}) {
    const BracketReport r = verify_root_brackets(n, capped(kBracketMaxBits));
    const BracketReport l = verify_root_log_brackets(n, capped(kBracketMaxBits));
    if (r.status != Status::pass || l.status != Status::pass) o.pass = false;
    for (const BracketReport* rep : {&r, &l})
      for (const auto& c : rep->checks)
        if (c.status != Status::pass) d << " n=" << n << " '" << c.label << "' " << to_string(c.status) << ";";
  }
  o.detail = o.pass ? "all twelve bracket families certified" : "failing:" + d.str();
  return o;
}

// ---------------------------------------------------------------- 3

Outcome siegel() {
  std::mt19937_64 rng(301);
  std::uniform_int_distribution<long> nn(3, 100), st(-6, 6), xy(-50, 50);
  for (long i = 0; i < kSiegelInstances; ++i) {
    const long n = nn(rng), s = st(rng), t = st(rng);
    const mpz_class x = xy(rng), y = xy(rng);
    const auto alphas = alpha_elements(n, s, t);
    std::array<OrderElement, 3> betas;
    for (int k = 0; k < 3; ++k) betas[static_cast<std::size_t>(k)] = OrderElement::integer(n, x) - y * alphas[static_cast<std::size_t>(k)];
    for (auto [j, k, l] : {std::array{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}}) {
      if (!(siegel_residual(j, k, l, alphas, betas) == OrderElement::integer(n, 0)))
        return {false, "non-zero residual at n=" + std::to_string(n)};
    }
  }
  return {true, std::to_string(kSiegelInstances) + " instances, all permutations exact zero"};
}

// ---------------------------------------------------------------- 4

Outcome unit_norm() {
  std::mt19937_64 rng(401);
  std::uniform_int_distribution<long> nn(3, 1000), st(-8, 8), xy(-1000, 1000);
  for (long i = 0; i < kNormInstances; ++i) {
    const long n = nn(rng), s = st(rng), t = st(rng);
    if (abs(form_coeffs(n, s, t).e3) != 1) return {false, "|e3| != 1"};
  }
  for (long i = 0; i < kNormInstances; ++i) {
    const long n = nn(rng), s = st(rng), t = st(rng);
    const mpz_class x = xy(rng), y = xy(rng);
    const OrderElement beta = OrderElement::integer(n, x) - y * alpha_element(n, s, t, 0);
    if (evaluate_form(n, s, t, x, y) != norm(beta)) return {false, "F(x,y) != N(x - alpha0 y)"};
  }
  return {true, "|e3| = 1 and F = N(x - alpha0 y) on 500 + 500 random instances"};
}

// ---------------------------------------------------------------- 5

Outcome galois() {
  std::mt19937_64 rng(501);
  std::uniform_int_distribution<long> nn(3, 500);
  for (long i = 0; i < kSigmaElements; ++i) {
    const OrderElement u = random_element(rng, nn(rng), 1000);
    if (!(conjugate(u, 3) == u)) return {false, "sigma^3 != id"};
  }
  for (long i = 0; i < kSigmaPairs; ++i) {
    const long n = nn(rng);
    const OrderElement u = random_element(rng, n, 1000), v = random_element(rng, n, 1000);
    if (!(conjugate(u * v) == conjugate(u) * conjugate(v)) || !(conjugate(u + v) == conjugate(u) + conjugate(v)))
      return {false, "sigma is not a ring homomorphism"};
  }
  for (long n : {3L, 10L, 1000L, 1000000L}) {
    const RootTriple coarse = compute_roots(n, 128);
    const RootTriple fine = compute_roots(n, 512);
    const Enclosure s0 = evaluate(conjugate(OrderElement::lambda0(n)), fine.lam0, 512);
    const Enclosure s2 = evaluate(conjugate(OrderElement::lambda2(n)), fine.lam0, 512);
    if (!coarse.lam1.contains(s0) || !coarse.lam0.contains(s2))
      return {false, "sigma(lam0) / sigma(lam2) enclosure mismatch at n=" + std::to_string(n)};
  }
  return {true, "sigma^3 = id (1000), homomorphism (500 pairs), sigma(lam0) in lam1, sigma(lam2) in lam0"};
}

// ---------------------------------------------------------------- 6

Outcome decomposition() {
  std::mt19937_64 rng(601);
  std::uniform_int_distribution<long> e(-10, 10), nn(3, 50);
  std::uniform_int_distribution<int> sg(0, 1);
  for (long i = 0; i < kDecompositionWords; ++i) {
    const UnitWord w{sg(rng) ? 1 : -1, e(rng), e(rng)};
    const long n = nn(rng);
    const BetaDecomposition direct = decompose_unit(unit_word_to_element(w, n));
    // sign * alpha_0 with (s, t) = (a - b, -b) is x - alpha_0 y for (x, y) = (0, -sign).
    const BetaDecomposition viaxy = decompose_beta(0, -w.sign, n, w.a - w.b, -w.b);
    if (!direct.exact_verified || !(direct.word == w) || !viaxy.exact_verified || !(viaxy.word == w)) {
      std::ostringstream d;
      d << "word " << w << " at n=" << n << " recovered as " << direct.word << " / " << viaxy.word;
      return {false, d.str()};
    }
  }
  return {true, "300 words recovered exactly, both directly and as solutions (0, -sign)"};
}

// ---------------------------------------------------------------- 7

std::vector<std::pair<long, long>> nonzero_pairs() {
  std::vector<std::pair<long, long>> v;
  for (long s = -2; s <= 2; ++s)
    for (long t = -2; t <= 2; ++t)
      if (s != 0 && t != 0) v.push_back({s, t});
  return v;
}

std::vector<Solution> g_criterion7_solutions;

std::string search_output(const std::string& threads) {
  std::string all;
  for (auto [s, t] : nonzero_pairs()) {
    std::ostringstream out, err;
    const std::string S = std::to_string(s), T = std::to_string(t);
    cli::run({"tthue", "--threads", threads, "search", "--n-min", "3", "--n-max", "5", "--s-min", S, "--s-max", S,
              "--t-min", T, "--t-max", T, "--y-max", std::to_string(kSearchRadius)},
             out, err);
    all += out.str();
  }
  return all;
}

Outcome search() {
  long win = 0, exh = 0;
  for (auto [s, t] : nonzero_pairs()) {
    SearchGrid g;
    g.n = {3, 5};
    g.s = {s, s};
    g.t = {t, t};
    g.y_max = kSearchRadius;
    const StrategyComparison c = compare_strategies(g, kSearchRadius);
    if (!c.equal) return {false, "strategies differ at (s,t)=(" + std::to_string(s) + "," + std::to_string(t) + ")"};
    win += c.windowed_count;
    exh += c.exhaustive_count;
    const SearchResult r = enumerate_solutions(g);
    for (const Solution& sol : r.records) {
      if (abs(evaluate_form(sol.n, sol.s, sol.t, sol.x, sol.y)) != 1) return {false, "emitted non-solution"};
      g_criterion7_solutions.push_back(sol);
    }
  }
  const std::string a = search_output("0"), b = search_output("0"), c = search_output("0");
  const std::string one = search_output("1"), four = search_output("4");
  if (a != b || a != c) return {false, "output differs across runs"};
  if (a != one || a != four) return {false, "output differs across thread counts"};
  return {true, "windowed = exhaustive (" + std::to_string(win) + " = " + std::to_string(exh) +
                    "), all |F| = 1, JSONL byte-identical over 3 runs and threads {1, 4}"};
}

// ---------------------------------------------------------------- 8

Outcome lemmas() {
  std::mt19937_64 rng(801);
  for (long i = 0; i < kProdByMaxTriples; ++i) {
    const auto tr = random_unit_triple(rng);
    if (verify_prodbymax(tr[0], tr[1], tr[2]).status != Status::pass) return {false, "prodbymax failed"};
  }
  const Epsilon eps(mpq_class(1, 10));
  long grid = 0, skipped = 0;
  for (long n : {10L, 100L, 1000L})
    for (long tau = 3; tau <= 10; ++tau) {
      if (compute_c1(eps, n, tau).feasible != Status::pass) {
        ++skipped;
        continue;
      }
      for (long s = -tau; s <= tau; ++s)
        for (long t = -tau; t <= tau; ++t) {
          if (std::max(std::labs(s), std::labs(t)) != tau || !separation_holds(s, t, eps)) continue;
          ++grid;
          const LemmaReport d = verify_alphadiff(n, s, t, eps);
          const LemmaReport m = verify_alphamax(n, s, t, eps);
          if (d.status != Status::pass || m.status != Status::pass) {
            std::ostringstream o;
            o << "(n,s,t)=(" << n << "," << s << "," << t << "): alphadiff " << to_string(d.status) << ", alphamax "
              << to_string(m.status);
            return {false, o.str()};
          }
        }
    }
  long salad = 0;
  for (const Solution& sol : g_criterion7_solutions) {
    if (sol.y == 0 || !sol.record) continue;
    const LemmaReport r = verify_alphasalad(*sol.record);
    if (!r.hypotheses_hold) continue;
    ++salad;
    if (r.status != Status::pass) return {false, "alphasalad failed"};
  }
  if (salad == 0) return {false, "no alphasalad instance checked"};
  std::ostringstream o;
  o << "prodbymax 10^5; alphadiff+alphamax on " << grid << " (n,s,t) (" << skipped
    << " (n,tau) with c1 infeasible); alphasalad on " << salad << " records";
  return {true, o.str()};
}

// ---------------------------------------------------------------- 9

Outcome baker() {
  const Enclosure c = baker_constant(2, 3, 256);
  const mpq_class width = c.hi().to_rational() - c.lo().to_rational();
  const mpq_class tol = kBakerRelTol * kBakerC23;
  if (compare(c.lo(), kBakerC23 + tol) > 0 || compare(c.hi(), kBakerC23 - tol) < 0)
    return {false, "C(2,3) misses the scripted value"};
  if (width > tol) return {false, "C(2,3) enclosure too wide"};

  std::mt19937_64 rng(901);
  std::uniform_int_distribution<long> hnum(2, 400), bnum(3, 100000), tc(1, 3);
  for (long i = 0; i < kBakerRandomInputs; ++i) {
    BakerInputs in;
    in.t_count = tc(rng);
    in.D = 3;
    for (long k = 0; k < in.t_count; ++k) in.heights.push_back(Enclosure::rational(mpq_class(hnum(rng), 20), 128));
    in.B = Enclosure(bnum(rng));
    BakerInputs bigger_h = in, bigger_b = in;
    bigger_h.heights[0] = in.heights[0] + Enclosure(1);
    bigger_b.B = in.B + Enclosure(1);
    const Enclosure base = baker_lower_bound(in);
    if (!(base.hi() < Dyadic(0))) return {false, "lower bound not negative"};
    if (check_less(baker_lower_bound(bigger_h), base) != Status::pass ||
        check_less(baker_lower_bound(bigger_b), base) != Status::pass)
      return {false, "lower bound not monotone"};
  }

  const RootTriple r = compute_roots(3, capped(kBracketMaxBits));
  const Enclosure expected = div(log(r.lam0 + Enclosure(1), r.bits), Enclosure(3), r.bits);
  const HeightValue h = absolute_log_height(OrderElement::lambda0(3));
  if (!h.value.overlaps(expected)) return {false, "h(lam0) misses (1/3) log(lam0 + 1)"};
  return {true, "C(2,3) within 10^-12 relative, 100 monotone inputs, h(lam0) at n=3 matches"};
}

// ---------------------------------------------------------------- 10

Outcome case_analysis() {
  struct Case {
    int u, v;
    long s, t;
    UnitWord word;  // tabulated (a, b)
  };
  const auto table = [](int u, int v, long s, long t) {
    if (u == 0 && v == 0) return UnitWord{1, 0, 0};
    if (u == 0 && v == 2) return UnitWord{1, s, s - t};
    if (u == 1 && v == 0) return UnitWord{1, t, -s};
    return UnitWord{1, s - t, -t};
  };
  const std::vector<Case> cases = {{0, 0, 3, -1, table(0, 0, 3, -1)},
                                   {0, 2, 2, 3, table(0, 2, 2, 3)},
                                   {1, 0, -3, -4, table(1, 0, -3, -4)},
                                   {1, 2, -1, 1, table(1, 2, -1, 1)}};
  Outcome o{true, ""};
  std::ostringstream d;
  for (const Case& c : cases) {
    const SolutionRecord rec = synthetic_record(kCaseN, c.s, c.t, c.word, 0);
    d << " (" << c.u << "," << c.v << "):";
    if (rec.u != c.u || rec.v != c.v) {
      o.pass = false;
      d << " synthetic record has (u,v)=(" << rec.u << "," << rec.v << ");";
      continue;
    }
    const CaseReport r = case_check(rec, decompose_unit(rec.beta0));
    bool ok = r.relations_hold;
    if (c.u == 0 && c.v == 0) {
      ok = ok && r.decomposition == UnitWord{1, 0, 0};
    } else {
      ok = ok && r.approx_sign_agrees == Status::pass;
    }
    if (ok) {
      d << " ok;";
    } else {
      o.pass = false;
      d << " relations " << (r.relations_hold ? "hold" : "fail") << ", Lambda' coefficients (" << r.lambda_prime_lam0
        << "," << r.lambda_prime_lam2 << "), vanishing requires (a,b)=(" << r.implied_a << "," << r.implied_b
        << "), sign " << to_string(r.approx_sign_agrees) << ";";
    }
  }
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- 11

Outcome honesty() {
  PrecisionPolicy starved;
  starved.start_bits = starved.max_bits = kStarvedBits;
  std::vector<std::pair<std::string, Status>> got = {
      {"root brackets n=10^9", verify_root_brackets(1000000000, starved).status},
      {"log brackets n=10^9", verify_root_log_brackets(1000000000, starved).status},
      {"decompose lam0^40 lam2^-37 at n=10^6",
       decompose_unit(unit_word_to_element({1, 40, -37}, 1000000), starved).status},
  };
  std::ostringstream d;
  bool ok = true;
  for (const auto& [name, st] : got) {
    d << " " << name << ": " << to_string(st) << ";";
    if (st != Status::undecided) ok = false;
  }
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "three-term form reproduction", three_term_form},
      {2, "root brackets and root-log brackets", root_brackets},
      {3, "exact Siegel residual", siegel},
      {4, "unit-norm invariant", unit_norm},
      {5, "Galois structure", galois},
      {6, "decomposition round-trip", decomposition},
      {7, "search soundness and windowed completeness", search},
      {8, "lemma verifiers", lemmas},
      {9, "Baker machinery", baker},
      {10, "case-analysis fidelity", case_analysis},
      {11, "three-valued honesty", honesty},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2d: %s  %s (%.2f s) %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
