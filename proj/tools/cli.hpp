#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tthue/tthue.hpp"

namespace tthue::cli {

using Json = nlohmann::ordered_json;

/// Bad flags, config values or inputs. Maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- parsing

inline mpq_class parse_rational(const std::string& text, const std::string& what) {
  const std::string digits = "0123456789";
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  const auto integer_ok = [&](const std::string& s, bool allow_sign) {
    std::size_t i = (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    return s.size() > i && s.find_first_not_of(digits, i) == std::string::npos;
  };
  if (!integer_ok(num, true) || !integer_ok(den, false))
    throw UsageError(what + " must be a rational p/q, got '" + text + "'");
  mpq_class q(mpz_class(num[0] == '+' ? num.substr(1) : num, 10), mpz_class(den, 10));
  if (q.get_den() == 0) throw UsageError(what + " has a zero denominator");
  q.canonicalize();
  return q;
}

inline mpz_class parse_integer(const std::string& text, const std::string& what) {
  if (text.find('/') != std::string::npos) throw UsageError(what + " must be an integer, got '" + text + "'");
  try {
    return parse_rational(text, what).get_num();
  } catch (const UsageError&) {
    throw UsageError(what + " must be an integer, got '" + text + "'");
  }
}

inline long parse_long(const std::string& text, const std::string& what) {
  const mpz_class z = parse_integer(text, what);
  if (!z.fits_slong_p()) throw UsageError(what + " is out of range");
  return z.get_si();
}

// ---------------------------------------------------------------- config

struct RunConfig {
  mpfr_prec_t bits = 128;
  mpfr_prec_t max_bits = 16384;
  Epsilon epsilon{mpq_class(1, 10)};
  BoundConstants constants;
  std::string output;  // empty: stdout
  unsigned threads = 0;

  PrecisionPolicy policy() const {
    PrecisionPolicy p;
    p.start_bits = bits;
    p.max_bits = max_bits;
    return p;
  }
};

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto positive_bits = [&](const std::string& v) {
    const long b = parse_long(v, key);
    if (b < 16 || b > (1L << 24)) throw UsageError(key + " must lie in [16, 2^24]");
    return static_cast<mpfr_prec_t>(b);
  };
  const auto positive_rational = [&](const std::string& v) {
    const mpq_class q = parse_rational(v, key);
    if (sgn(q) <= 0) throw UsageError(key + " must be positive");
    return q;
  };
  if (key == "bits") {
    cfg.bits = positive_bits(value);
  } else if (key == "max_bits") {
    cfg.max_bits = positive_bits(value);
  } else if (key == "epsilon") {
    cfg.epsilon = Epsilon(positive_rational(value));
  } else if (key == "c2") {
    cfg.constants.c2 = positive_rational(value);
  } else if (key == "c3") {
    cfg.constants.c3 = positive_rational(value);
  } else if (key == "c4") {
    cfg.constants.c4 = positive_rational(value);
  } else if (key == "c5") {
    cfg.constants.c5 = positive_rational(value);
  } else if (key == "c_cu") {
    cfg.constants.c_cu = positive_rational(value);
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "threads") {
    const long t = parse_long(value, key);
    if (t < 0 || t > 1024) throw UsageError("threads must lie in [0, 1024]");
    cfg.threads = static_cast<unsigned>(t);
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

/// Flat key=value file; '#' starts a comment line.
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

// ---------------------------------------------------------------- json

inline constexpr long kExactJsonLimit = 1L << 53;

inline Json to_json(const mpz_class& z) {
  if (z.fits_slong_p() && std::labs(z.get_si()) <= kExactJsonLimit) return Json(z.get_si());
  return Json(z.get_str());
}

inline Json to_json(const mpq_class& q) { return Json(q.get_str()); }

inline Json to_json(const Enclosure& e) {
  Json j;
  j["lo"] = e.lo().to_string();
  j["hi"] = e.hi().to_string();
  return j;
}

inline Json to_json(Status s) { return Json(std::string(to_string(s))); }

inline Json to_json(const UnitWord& w) { return Json{{"sign", w.sign}, {"a", w.a}, {"b", w.b}}; }

inline Json to_json(const OrderElement& e) { return Json::array({to_json(e[0]), to_json(e[1]), to_json(e[2])}); }

inline Enclosure enclosure_from_json(const Json& j) {
  return Enclosure(Dyadic::parse(j.at("lo").get<std::string>()), Dyadic::parse(j.at("hi").get<std::string>()));
}

inline mpz_class integer_from_json(const Json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
  return mpz_class(j.get<long>());
}

inline Json record_json(const SolutionRecord& r) {
  Json j;
  j["j"] = r.j;
  j["k"] = r.k;
  j["l"] = r.l;
  j["u"] = r.u;
  j["v"] = r.v;
  j["alpha_order"] = r.alpha_order;
  j["ordering"] = to_json(r.ordering);
  j["exact_tie"] = r.exact_tie;
  j["bits"] = r.bits;
  return j;
}

inline Json lemma_json(const LemmaReport& r) {
  Json j;
  j["lemma"] = r.name;
  j["status"] = to_json(r.status);
  j["hypotheses_hold"] = r.hypotheses_hold;
  j["detail"] = r.detail;
  Json obs = Json::object();
  for (const auto& [name, e] : r.observed) obs[name] = to_json(e);
  j["observed"] = obs;
  j["bits"] = r.bits;
  return j;
}

inline Json linear_form_json(const LinearFormReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["branch"] = r.branch;
  j["coeff_lam0"] = r.coeff_lam0;
  j["coeff_lam2"] = r.coeff_lam2;
  j["coeff_log2"] = r.coeff_log2;
  j["value"] = to_json(r.value);
  j["upper_bound"] = to_json(r.upper_bound);
  j["nonzero"] = to_json(r.nonzero);
  j["bound_holds"] = to_json(r.bound_holds);
  j["bits"] = r.bits;
  return j;
}

// ---------------------------------------------------------------- commands

struct Context {
  RunConfig cfg;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  void emit(const Json& j) const { *out << j.dump() << '\n'; }
};

inline int exit_for(Status s) { return s == Status::pass ? 0 : 1; }

struct Args {
  std::string n, s, t, x, y, a, b, c, tau, t_count, logy, lemma, sign, j;
  std::string n_min, n_max, s_min, s_max, t_min, t_max, y_max, x_max, window;
  bool require_condition = false, brackets = false;
};

inline void need(const std::string& v, const std::string& flag) {
  if (v.empty()) throw UsageError("missing --" + flag);
}

inline long family_n(const Args& a) {
  need(a.n, "n");
  const long n = parse_long(a.n, "n");
  if (n < 3) throw UsageError("n must be at least 3");
  return n;
}

inline int cmd_roots(const Context& ctx, const Args& a) {
  const long n = family_n(a);
  const PrecisionPolicy p = ctx.cfg.policy();
  const RootTriple r = compute_roots(n, p);
  const RootLogs lg = compute_root_logs(r, r.bits);
  Json j;
  j["n"] = n;
  j["lam0"] = to_json(r.lam0);
  j["lam1"] = to_json(r.lam1);
  j["lam2"] = to_json(r.lam2);
  j["log_lam0"] = to_json(lg.log_lam0);
  j["log_abs_lam1"] = to_json(lg.log_abs_lam1);
  j["log_abs_lam2"] = to_json(lg.log_abs_lam2);
  j["bits"] = r.bits;
  int code = 0;
  if (a.brackets) {
    const auto report = [&](const BracketReport& rep) {
      Json checks = Json::array();
      for (const auto& c : rep.checks) checks.push_back({{"label", c.label}, {"status", to_json(c.status)}});
      Json extra = Json::array();
      for (const auto& c : rep.extra) extra.push_back({{"label", c.label}, {"status", to_json(c.status)}});
      if (rep.status != Status::pass) code = 1;
      return Json{{"status", to_json(rep.status)}, {"checks", checks}, {"extra", extra}, {"bits", rep.bits}};
    };
    j["root_brackets"] = report(verify_root_brackets(n, p));
    j["log_brackets"] = report(verify_root_log_brackets(n, p));
  }
  ctx.emit(j);
  return code;
}

inline int cmd_form(const Context& ctx, const Args& a) {
  const long n = family_n(a);
  need(a.s, "s");
  need(a.t, "t");
  const NormFormCoeffs f = form_coeffs(n, parse_long(a.s, "s"), parse_long(a.t, "t"));
  ctx.emit(Json{{"e1", to_json(f.e1)}, {"e2", to_json(f.e2)}, {"e3", to_json(f.e3)}});
  return 0;
}

struct Point {
  long n, s, t;
  mpz_class x, y;
};

inline Point point(const Args& a) {
  need(a.s, "s");
  need(a.t, "t");
  need(a.x, "x");
  need(a.y, "y");
  return {family_n(a), parse_long(a.s, "s"), parse_long(a.t, "t"), parse_integer(a.x, "x"), parse_integer(a.y, "y")};
}

inline Json point_json(const Point& p) {
  return Json{{"n", p.n}, {"s", p.s}, {"t", p.t}, {"x", to_json(p.x)}, {"y", to_json(p.y)}};
}

inline int cmd_eval(const Context& ctx, const Args& a) {
  const Point p = point(a);
  const mpz_class v = evaluate_form(p.n, p.s, p.t, p.x, p.y);
  Json j = point_json(p);
  j["value"] = to_json(v);
  j["solution"] = abs(v) == 1;
  ctx.emit(j);
  return 0;
}

inline SearchGrid grid_from(const Context& ctx, const Args& a) {
  SearchGrid g;
  for (const auto& [v, f] : std::vector<std::pair<std::string, std::string>>{
           {a.n_min, "n-min"}, {a.n_max, "n-max"}, {a.s_min, "s-min"}, {a.s_max, "s-max"}, {a.t_min, "t-min"},
           {a.t_max, "t-max"}, {a.y_max, "y-max"}})
    need(v, f);
  g.n = {parse_long(a.n_min, "n-min"), parse_long(a.n_max, "n-max")};
  g.s = {parse_long(a.s_min, "s-min"), parse_long(a.s_max, "s-max")};
  g.t = {parse_long(a.t_min, "t-min"), parse_long(a.t_max, "t-max")};
  g.y_max = parse_long(a.y_max, "y-max");
  if (!a.window.empty()) g.window = parse_long(a.window, "window");
  g.epsilon = ctx.cfg.epsilon;
  g.require_condition = a.require_condition;
  g.threads = ctx.cfg.threads;
  try {
    g.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const long long cells = (g.n.empty() || g.s.empty() || g.t.empty())
                              ? 0
                              : static_cast<long long>(g.n.hi - g.n.lo + 1) * (g.s.hi - g.s.lo + 1) * (g.t.hi - g.t.lo + 1);
  if (cells > 10000000LL) throw UsageError("search grid has more than 10^7 cells");
  return g;
}

inline int cmd_search(const Context& ctx, const Args& a) {
  const SearchGrid g = grid_from(ctx, a);
  const SearchResult res = enumerate_solutions(g, ctx.cfg.policy());
  for (const Solution& s : res.records) {
    Json j{{"type", "solution"}, {"n", s.n}, {"s", s.s}, {"t", s.t}, {"x", to_json(s.x)}, {"y", to_json(s.y)}};
    if (s.record) j["record"] = record_json(*s.record);
    ctx.emit(j);
  }
  ctx.emit(Json{{"type", "summary"},
                {"strategy", to_string(res.strategy)},
                {"cells", res.stats.cells},
                {"candidates", res.stats.candidates},
                {"solutions", res.stats.solutions},
                {"undecided", res.stats.undecided},
                {"completeness_caveat", res.stats.completeness_caveat}});
  return 0;
}

inline int cmd_compare(const Context& ctx, const Args& a) {
  const SearchGrid g = grid_from(ctx, a);
  need(a.x_max, "x-max");
  const StrategyComparison c = compare_strategies(g, parse_long(a.x_max, "x-max"), ctx.cfg.policy());
  const auto list = [](const std::vector<Solution>& v) {
    Json arr = Json::array();
    for (const Solution& s : v)
      arr.push_back(Json{{"n", s.n}, {"s", s.s}, {"t", s.t}, {"x", to_json(s.x)}, {"y", to_json(s.y)}});
    return arr;
  };
  ctx.emit(Json{{"equal", c.equal},
                {"windowed", c.windowed_count},
                {"exhaustive", c.exhaustive_count},
                {"only_windowed", list(c.only_windowed)},
                {"only_exhaustive", list(c.only_exhaustive)}});
  return c.equal ? 0 : 1;
}

inline int cmd_decompose(const Context& ctx, const Args& a) {
  const Point p = point(a);
  const BetaDecomposition d = decompose_beta(p.x, p.y, p.n, p.s, p.t, ctx.cfg.policy());
  Json j = point_json(p);
  j["word"] = to_json(d.word);
  j["exact_verified"] = d.exact_verified;
  j["status"] = to_json(d.status);
  j["bits"] = d.bits;
  ctx.emit(j);
  return d.exact_verified ? 0 : 1;
}

inline int cmd_classify(const Context& ctx, const Args& a) {
  const Point p = point(a);
  const PrecisionPolicy pol = ctx.cfg.policy();
  const SolutionRecord rec = classify_solution(p.x, p.y, p.n, p.s, p.t, pol);
  const BetaDecomposition d = decompose_beta(p.x, p.y, p.n, p.s, p.t, pol);
  Json j = point_json(p);
  j["record"] = record_json(rec);
  j["beta0"] = to_json(rec.beta0);
  j["word"] = to_json(d.word);
  j["exact_verified"] = d.exact_verified;
  int code = rec.ordering == Status::pass && d.exact_verified ? 0 : 1;
  if (d.exact_verified && rec.ordering == Status::pass) {
    Json forms = Json::array();
    for (LinearFormKind k : {LinearFormKind::lambda, LinearFormKind::lambda_prime, LinearFormKind::lambda_dblprime}) {
      try {
        forms.push_back(linear_form_json(linear_form(rec, d.word, k, pol, ctx.cfg.epsilon)));
      } catch (const VerificationFailed& e) {
        forms.push_back(Json{{"kind", to_string(k)}, {"error", e.what()}});
        code = 1;
      }
    }
    j["linear_forms"] = forms;
    if (p.y != 0) {
      const LogYApprox ap = approx_log_y(rec, std::nullopt, pol);
      Json aj{{"index", ap.index}, {"value", to_json(ap.value)}, {"within_delta", to_json(ap.within_delta)}};
      if (ap.delta_bound) aj["delta_bound"] = to_json(*ap.delta_bound);
      j["approx_log_y"] = aj;
    }
  }
  ctx.emit(j);
  return code;
}

inline int cmd_verify(const Context& ctx, const Args& a) {
  need(a.lemma, "lemma");
  LemmaParams p;
  if (!a.n.empty()) p.n = family_n(a);
  if (!a.s.empty()) p.s = parse_long(a.s, "s");
  if (!a.t.empty()) p.t = parse_long(a.t, "t");
  if (!a.x.empty()) p.x = parse_integer(a.x, "x");
  if (!a.y.empty()) p.y = parse_integer(a.y, "y");
  if (!a.a.empty()) p.a = parse_rational(a.a, "a");
  if (!a.b.empty()) p.b = parse_rational(a.b, "b");
  if (!a.c.empty()) p.c = parse_rational(a.c, "c");
  p.epsilon = ctx.cfg.epsilon;
  p.c_cu = ctx.cfg.constants.c_cu;
  LemmaReport rep;
  try {
    rep = verify_lemma(a.lemma, p, ctx.cfg.policy());
  } catch (const PreconditionFailed& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    if (std::string(e.what()).rfind("unknown lemma", 0) == 0) throw UsageError(e.what());
    throw;
  }
  ctx.emit(lemma_json(rep));
  return exit_for(rep.status);
}

inline int cmd_case(const Context& ctx, const Args& a) {
  need(a.s, "s");
  need(a.t, "t");
  need(a.a, "a");
  need(a.b, "b");
  const long n = family_n(a), s = parse_long(a.s, "s"), t = parse_long(a.t, "t");
  const int sign = a.sign.empty() ? 1 : static_cast<int>(parse_long(a.sign, "sign"));
  if (sign != 1 && sign != -1) throw UsageError("sign must be 1 or -1");
  const int jj = a.j.empty() ? 0 : static_cast<int>(parse_long(a.j, "j"));
  if (jj < 0 || jj > 2) throw UsageError("j must be 0, 1 or 2");
  const PrecisionPolicy pol = ctx.cfg.policy();
  const UnitWord w{sign, parse_long(a.a, "a"), parse_long(a.b, "b")};
  const SolutionRecord rec = synthetic_record(n, s, t, w, jj, pol);
  const CaseReport c = case_check(rec, decompose_unit(rec.beta0, pol), pol);
  Json j{{"n", n}, {"s", s}, {"t", t}, {"u", c.u}, {"v", c.v}};
  j["decomposition"] = to_json(c.decomposition);
  j["expected"] = Json{{"a", c.expected_a}, {"b", c.expected_b}};
  j["matches_table"] = c.matches_table;
  j["lambda_prime"] = Json{{"coeff_lam0", c.lambda_prime_lam0}, {"coeff_lam2", c.lambda_prime_lam2}};
  j["lambda_prime_vanishes"] = c.lambda_prime_vanishes;
  j["implied"] = Json{{"a", to_json(c.implied_a)}, {"b", to_json(c.implied_b)}};
  j["relations_hold"] = c.relations_hold;
  if (c.predicted_sign) {
    j["predicted_sign"] = *c.predicted_sign;
    j["predicted_log_y"] = to_json(c.predicted_log_y);
  }
  j["approx_log_y"] = to_json(c.approx_log_y);
  j["approx_sign_agrees"] = to_json(c.approx_sign_agrees);
  ctx.emit(j);
  const bool sign_ok = !c.predicted_sign || c.approx_sign_agrees == Status::pass;
  return c.relations_hold && sign_ok ? 0 : 1;
}

inline int cmd_bounds(const Context& ctx, const Args& a) {
  const long n = family_n(a);
  need(a.tau, "tau");
  const long tau = parse_long(a.tau, "tau");
  const long tc = a.t_count.empty() ? 2 : parse_long(a.t_count, "t-count");
  if (tau < 3) throw UsageError("tau must be at least 3");
  if (tc < 1 || tc > 64) throw UsageError("t-count must lie in [1, 64]");
  const mpfr_prec_t bits = ctx.cfg.bits;
  std::optional<Enclosure> logy;
  if (!a.logy.empty()) logy = Enclosure::rational(parse_rational(a.logy, "logy"), bits);
  const DerivedBounds d = derived_bounds(n, tau, ctx.cfg.constants, logy, bits);
  Json j{{"n", n}, {"tau", tau}, {"t_count", tc}, {"degree", 3}};
  j["baker_constant"] = to_json(baker_constant(tc, 3, bits));
  j["logy_bound"] = to_json(d.logy_bound);
  j["tau_bound"] = to_json(d.tau_bound);
  j["logy_by_n"] = to_json(d.logy_by_n);
  j["coeff_by_n"] = to_json(d.coeff_by_n);
  j["tau_holds"] = to_json(d.tau_holds);
  Status overall = d.tau_holds;
  if (d.logy_holds) {
    j["logy_holds"] = to_json(*d.logy_holds);
    j["logy_by_n_holds"] = to_json(*d.logy_by_n_holds);
    overall = overall && *d.logy_holds && *d.logy_by_n_holds;
  }
  j["substituted"] = to_json(d.substituted);
  j["folded"] = to_json(d.folded);
  j["substitution_consistent"] = to_json(d.substitution_consistent);
  overall = overall && d.substitution_consistent;
  j["status"] = to_json(overall);
  ctx.emit(j);
  return exit_for(overall);
}

inline int cmd_condition(const Context& ctx, const Args& a) {
  need(a.s, "s");
  need(a.t, "t");
  const long s = parse_long(a.s, "s"), t = parse_long(a.t, "t");
  const Epsilon& eps = ctx.cfg.epsilon;
  ctx.emit(Json{{"holds", check_condition(s, t, eps)},
                {"separated", separation_holds(s, t, eps)},
                {"s", s},
                {"t", t},
                {"tau", std::max(std::labs(s), std::labs(t))},
                {"min_separation", min_separation(s, t)},
                {"epsilon", eps.to_string()}});
  return 0;
}

inline int cmd_c1(const Context& ctx, const Args& a) {
  const long n = family_n(a);
  need(a.tau, "tau");
  const long tau = parse_long(a.tau, "tau");
  if (tau < 1) throw UsageError("tau must be positive");
  const C1Result r = compute_c1(ctx.cfg.epsilon, n, tau, ctx.cfg.policy());
  ctx.emit(Json{{"n", n},
                {"tau", tau},
                {"epsilon", ctx.cfg.epsilon.to_string()},
                {"c1", to_json(r.value)},
                {"lower", to_json(r.lower)},
                {"feasible", to_json(r.feasible)},
                {"bits", r.bits}});
  return exit_for(r.feasible);
}

// ---------------------------------------------------------------- run

/// Runs one command line; returns the process exit code (0, 1 or 2).
inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Twisted Thue equations over the simplest cubic fields", "tthue"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, bits, max_bits, epsilon, c2, c3, c4, c5, c_cu, output, threads;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--bits", bits, "starting precision in bits");
  app.add_option("--max-bits", max_bits, "precision cap in bits");
  app.add_option("--epsilon", epsilon, "epsilon as p/q");
  app.add_option("--c2", c2);
  app.add_option("--c3", c3);
  app.add_option("--c4", c4);
  app.add_option("--c5", c5);
  app.add_option("--c-cu", c_cu, "constant in the coefficient bound");
  app.add_option("--output", output, "write JSONL here instead of stdout");
  app.add_option("--threads", threads, "search threads (0: all cores)");

  Args a;
  std::map<std::string, std::function<int(const Context&, const Args&)>> handlers;
  const auto sub = [&](const std::string& name, const std::string& help, auto&& handler) {
    handlers[name] = handler;
    return app.add_subcommand(name, help);
  };
  const auto opt = [](CLI::App* s, const std::string& flag, std::string& dst) { s->add_option("--" + flag, dst); };

  CLI::App* roots = sub("roots", "root and log enclosures", cmd_roots);
  opt(roots, "n", a.n);
  roots->add_flag("--brackets", a.brackets, "also certify the bracket inequalities");

  CLI::App* form = sub("form", "coefficients of the twisted form", cmd_form);
  for (auto [f, d] : {std::pair{"n", &a.n}, {"s", &a.s}, {"t", &a.t}}) opt(form, f, *d);

  for (auto [name, help, fn] : {std::tuple{"eval", "evaluate F(x, y)", cmd_eval},
                                {"decompose", "beta_0 as sign * lam0^a * lam2^b", cmd_decompose},
                                {"classify", "classification, linear forms and log|y| approximation", cmd_classify}}) {
    CLI::App* s = sub(name, help, fn);
    for (auto [f, d] : {std::pair{"n", &a.n}, {"s", &a.s}, {"t", &a.t}, {"x", &a.x}, {"y", &a.y}}) opt(s, f, *d);
  }

  for (auto [name, help, fn] : {std::tuple{"search", "windowed solution search", cmd_search},
                                {"compare", "windowed search against the exhaustive scan", cmd_compare}}) {
    CLI::App* s = sub(name, help, fn);
    for (auto [f, d] : {std::pair{"n-min", &a.n_min}, {"n-max", &a.n_max}, {"s-min", &a.s_min}, {"s-max", &a.s_max},
                        {"t-min", &a.t_min}, {"t-max", &a.t_max}, {"y-max", &a.y_max}, {"window", &a.window}})
      opt(s, f, *d);
    s->add_flag("--require-condition", a.require_condition, "skip cells failing the separation condition");
    if (std::string(name) == "compare") opt(s, "x-max", a.x_max);
  }

  CLI::App* verify = sub("verify", "certify one lemma instance", cmd_verify);
  for (auto [f, d] : {std::pair{"lemma", &a.lemma}, {"n", &a.n}, {"s", &a.s}, {"t", &a.t}, {"x", &a.x}, {"y", &a.y},
                      {"a", &a.a}, {"b", &a.b}, {"c", &a.c}})
    opt(verify, f, *d);

  CLI::App* cases = sub("case", "case table check on a synthetic j = 0 record", cmd_case);
  for (auto [f, d] : {std::pair{"n", &a.n}, {"s", &a.s}, {"t", &a.t}, {"a", &a.a}, {"b", &a.b}, {"sign", &a.sign},
                      {"j", &a.j}})
    opt(cases, f, *d);

  CLI::App* bounds = sub("bounds", "Baker constant and derived bounds", cmd_bounds);
  for (auto [f, d] : {std::pair{"n", &a.n}, {"t-count", &a.t_count}, {"tau", &a.tau}, {"logy", &a.logy}})
    opt(bounds, f, *d);

  CLI::App* condition = sub("condition", "separation condition on (s, t)", cmd_condition);
  for (auto [f, d] : {std::pair{"s", &a.s}, {"t", &a.t}}) opt(condition, f, *d);

  CLI::App* c1 = sub("c1", "c1 and its feasibility", cmd_c1);
  for (auto [f, d] : {std::pair{"n", &a.n}, {"tau", &a.tau}}) opt(c1, f, *d);

  std::vector<std::string> args = argv;
  if (args.empty()) args.push_back("tthue");
  std::vector<char*> raw;
  for (auto& s : args) raw.push_back(s.data());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Context ctx;
  ctx.err = &err;
  std::unique_ptr<std::ofstream> file;
  try {
    // default < TTHUE_BITS < config file < flags
    if (const char* env = std::getenv("TTHUE_BITS")) apply_setting(ctx.cfg, "bits", env);
    if (!config_path.empty()) load_config_file(ctx.cfg, config_path);
    for (const auto& [key, value] : std::vector<std::pair<std::string, std::string>>{
             {"bits", bits}, {"max_bits", max_bits}, {"epsilon", epsilon}, {"c2", c2}, {"c3", c3}, {"c4", c4},
             {"c5", c5}, {"c_cu", c_cu}, {"output", output}, {"threads", threads}})
      if (!value.empty()) apply_setting(ctx.cfg, key, value);
    if (ctx.cfg.max_bits < ctx.cfg.bits) throw UsageError("max_bits must be at least bits");
    if (!ctx.cfg.output.empty()) {
      file = std::make_unique<std::ofstream>(ctx.cfg.output);
      if (!*file) throw UsageError("cannot open output file '" + ctx.cfg.output + "'");
      ctx.out = file.get();
    } else {
      ctx.out = &out;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    return handlers.at(name)(ctx, a);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionFailed& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const GuardViolation& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedCase& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace tthue::cli
