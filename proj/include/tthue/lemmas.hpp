#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tthue/diophantine.hpp"

namespace tthue {

struct LemmaReport {
  std::string name;
  Status status = Status::undecided;
  bool hypotheses_hold = false;
  std::string detail;
  std::vector<std::pair<std::string, Enclosure>> observed;
  mpfr_prec_t bits = 0;
};

namespace detail {

inline LemmaReport hypotheses_violated(std::string name, std::string why) {
  LemmaReport r;
  r.name = std::move(name);
  r.status = Status::undecided;
  r.hypotheses_hold = false;
  r.detail = "hypotheses violated: " + std::move(why);
  return r;
}

// log|alpha_i| for all three conjugates.
inline std::array<Enclosure, 3> alpha_logs(long s, long t, const RootLogs& lg) {
  return {word_log(alpha_word(s, t, 0), lg), word_log(alpha_word(s, t, 1), lg), word_log(alpha_word(s, t, 2), lg)};
}

}  // namespace detail

/// max(a,b) max(a,c) >= sqrt(max(a,b,c)) for positive rationals with abc = 1,
/// decided exactly by squaring.
inline LemmaReport verify_prodbymax(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  if (sgn(a) <= 0 || sgn(b) <= 0 || sgn(c) <= 0) return detail::hypotheses_violated("prodbymax", "non-positive entry");
  if (a * b * c != 1) return detail::hypotheses_violated("prodbymax", "abc != 1");
  LemmaReport r;
  r.name = "prodbymax";
  r.hypotheses_hold = true;
  const mpq_class lhs = std::max(a, b) * std::max(a, c);
  const mpq_class m = std::max({a, b, c});
  r.status = lhs * lhs >= m ? Status::pass : Status::fail;
  r.detail = "lhs = " + lhs.get_str() + ", max = " + m.get_str();
  return r;
}

/// For every pair |alpha_q| > |alpha_p|: |alpha_p/alpha_q| < n^(-c1 tau) <= 1/2
/// and |alpha_p - alpha_q| > (1 - n^(-c1 tau)) |alpha_q| > |alpha_q|/2.
inline LemmaReport verify_alphadiff(long n, long s, long t, const Epsilon& eps, const PrecisionPolicy& policy = {}) {
  require_family_parameter(n);
  if (!separation_holds(s, t, eps)) return detail::hypotheses_violated("alphadiff", "(s,t) not separated at eps");
  const long tau = std::max(std::labs(s), std::labs(t));
  const C1Result c1 = compute_c1(eps, n, tau, policy);
  if (c1.feasible != Status::pass) return detail::hypotheses_violated("alphadiff", "c1 infeasible");
  LemmaReport rep;
  rep.name = "alphadiff";
  rep.hypotheses_hold = true;
  escalate_status(policy, [&](mpfr_prec_t bits) {
    rep.bits = bits;
    rep.observed.clear();
    const RootLogs lg = compute_root_logs(n, bits);
    const auto la = detail::alpha_logs(s, t, lg);
    const Enclosure log_n = log(Enclosure(n), bits);
    const Enclosure expo = -(c1.value * Enclosure(tau) * log_n).rounded(bits);  // log n^(-c1 tau)
    const Enclosure scale = exp(expo, bits);
    Status st = check_less_equal(scale, Enclosure(Dyadic(1).ldexp(-1)));
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) {
        if (p == q) continue;
        const Enclosure L = la[static_cast<std::size_t>(p)] - la[static_cast<std::size_t>(q)];  // log|alpha_p/alpha_q|
        if (L.hi().sign() >= 0) {
          if (L.lo().sign() < 0) st = st && Status::undecided;  // ordering not yet certified
          continue;
        }
        st = st && check_less(L, expo);
        // alpha_p/alpha_q = (-1)^(b_p - b_q) exp(L)
        const long db = alpha_word(s, t, p).b - alpha_word(s, t, q).b;
        Enclosure rho = exp(L.rounded(bits), bits);
        if (db % 2 != 0) rho = -rho;
        const Enclosure one_minus = abs(Enclosure(1) - rho);
        st = st && check_less(Enclosure(1) - scale, one_minus);
        st = st && check_less(Enclosure(Dyadic(1).ldexp(-1)), Enclosure(1) - scale);
        rep.observed.emplace_back("log|alpha_" + std::to_string(p) + "/alpha_" + std::to_string(q) + "|", L);
      }
    }
    rep.observed.emplace_back("n^(-c1 tau)", scale);
    rep.status = st;
    return st;
  });
  return rep;
}

/// n^(3 tau) >= max |alpha_i| >= n^(c1 tau), plus max |alpha_i| > n^(0.19 tau).
inline LemmaReport verify_alphamax(long n, long s, long t, const Epsilon& eps, const PrecisionPolicy& policy = {}) {
  require_family_parameter(n);
  const long tau = std::max(std::labs(s), std::labs(t));
  if (tau < 1) return detail::hypotheses_violated("alphamax", "tau = 0");
  const C1Result c1 = compute_c1(eps, n, tau, policy);
  if (c1.feasible != Status::pass) return detail::hypotheses_violated("alphamax", "c1 infeasible");
  LemmaReport rep;
  rep.name = "alphamax";
  rep.hypotheses_hold = true;
  escalate_status(policy, [&](mpfr_prec_t bits) {
    rep.bits = bits;
    const RootLogs lg = compute_root_logs(n, bits);
    const auto la = detail::alpha_logs(s, t, lg);
    const Enclosure m = max(max(la[0], la[1]), la[2]);
    const Enclosure log_n = log(Enclosure(n), bits);
    const Enclosure tl = Enclosure(tau) * log_n;
    Status st = check_less_equal(m, Enclosure(3) * tl);
    st = st && check_less_equal(c1.value * tl, m);
    st = st && check_less(Enclosure::rational(mpq_class(19, 100), bits) * tl, m);
    rep.observed = {{"max log|alpha_i|", m}, {"c1 tau log n", (c1.value * tl).rounded(bits)}, {"3 tau log n", Enclosure(3) * tl}};
    rep.status = st;
    return st;
  });
  return rep;
}

/// max(|a_k|,|a_l|) / (max(|a_j|,|a_k|) max(|a_j|,|a_l|)) < 2|y|, for a
/// classified solution with |y| >= 1 where either |alpha_j| is maximal or
/// x != 0 and |beta_j| < 1/2.
inline LemmaReport verify_alphasalad(const SolutionRecord& rec, const PrecisionPolicy& policy = {}) {
  using detail::at;
  if (!rec.x || !rec.y) return detail::hypotheses_violated("alphasalad", "record has no (x, y)");
  if (abs(*rec.y) < 1) return detail::hypotheses_violated("alphasalad", "y = 0");
  if (rec.ordering != Status::pass) return detail::hypotheses_violated("alphasalad", "classification not certified");
  const bool j_max = rec.alpha_order[0] == rec.j;
  LemmaReport rep;
  rep.name = "alphasalad";
  escalate_status(policy, [&](mpfr_prec_t bits) {
    rep.bits = bits;
    const RecordValues val = record_values(rec, bits);
    const auto& a = val.alpha;
    if (!j_max) {
      if (*rec.x == 0) {
        rep.hypotheses_hold = false;
        return Status::fail;
      }
      const Status small = check_less(abs(val.beta[at(rec.j)]), Enclosure(Dyadic(1).ldexp(-1)));
      if (small != Status::pass) {
        rep.hypotheses_hold = false;
        return small;  // fail: hypothesis false; undecided: retry
      }
    }
    rep.hypotheses_hold = true;
    const Enclosure aj = abs(a[at(rec.j)]), ak = abs(a[at(rec.k)]), al = abs(a[at(rec.l)]);
    const Enclosure q = div(max(ak, al), (max(aj, ak) * max(aj, al)).rounded(bits), bits);
    const Enclosure bound = Enclosure::integer(2 * abs(*rec.y));
    rep.observed = {{"quotient", q}, {"2|y|", bound}};
    rep.status = check_less(q, bound);
    return rep.status;
  });
  if (!rep.hypotheses_hold) {
    rep.status = Status::undecided;
    rep.detail = "hypotheses violated: alpha_j not maximal and not (x != 0, |beta_j| < 1/2)";
  }
  return rep;
}

/// max(|a|,|b|) <= C_cu (log|y| / log n + tau). Also solves the j-dependent
/// system M (a,b) = (log|beta_k|, log|beta_l|), rows [log|lam_i|, log|lam_(i+2)|],
/// and checks it encloses the exact exponents.
inline LemmaReport verify_coeff_ub_theta(const SolutionRecord& rec, const BetaDecomposition& dec,
                                         const mpq_class& c_cu = 64, const PrecisionPolicy& policy = {}) {
  using detail::at;
  if (!rec.y || abs(*rec.y) < 1) return detail::hypotheses_violated("coeff_ub_theta", "needs |y| >= 1");
  if (!dec.exact_verified) return detail::hypotheses_violated("coeff_ub_theta", "decomposition not verified");
  if (rec.tau() < 1) return detail::hypotheses_violated("coeff_ub_theta", "tau = 0");
  LemmaReport rep;
  rep.name = "coeff_ub_theta";
  rep.hypotheses_hold = true;
  const long a = dec.word.a, b = dec.word.b;
  const long m = std::max(std::labs(a), std::labs(b));
  escalate_status(policy, [&](mpfr_prec_t bits) {
    rep.bits = bits;
    const RecordValues val = record_values(rec, bits);
    const Enclosure log_n = log(Enclosure(rec.n), bits);
    const Enclosure scale = div(log(Enclosure::integer(abs(*rec.y)), bits), log_n, bits) + Enclosure(rec.tau());
    const Enclosure rhs = Enclosure::rational(c_cu, bits) * scale;
    Status st = check_less_equal(Enclosure(m), rhs);
    // j-dependent system
    const auto row = [&](int i) {
      return std::pair<Enclosure, Enclosure>{val.logs[i], val.logs[(i + 2) % 3]};
    };
    const auto [m11, m12] = row(rec.k);
    const auto [m21, m22] = row(rec.l);
    const Enclosure bk = detail::log_abs(val.beta[at(rec.k)], bits), bl = detail::log_abs(val.beta[at(rec.l)], bits);
    const Enclosure det = m11 * m22 - m12 * m21;
    Enclosure sa, sb;
    if (det.contains_zero()) {
      st = st && Status::undecided;
    } else {
      sa = div(bk * m22 - bl * m12, det, bits);
      sb = div(bl * m11 - bk * m21, det, bits);
      if (!sa.contains(Dyadic(a)) || !sb.contains(Dyadic(b))) st = st && Status::fail;
    }
    rep.observed = {{"max(|a|,|b|)", Enclosure(m)},
                    {"ratio", div(Enclosure(m), scale, bits)},
                    {"C_cu bound", rhs.rounded(bits)},
                    {"a from M", sa},
                    {"b from M", sb}};
    rep.status = st;
    return st;
  });
  return rep;
}

/// Exponent relations of the j = 0 case analysis.
struct CaseReport {
  int u = 0, v = 0;
  UnitWord decomposition;
  long expected_a = 0, expected_b = 0;  // tabulated (a, b) for (u, v)
  bool matches_table = false;           // decomposition equals the tabulated pair
  long lambda_prime_lam0 = 0;           // coefficients of Lambda' for this decomposition
  long lambda_prime_lam2 = 0;
  bool lambda_prime_vanishes = false;
  // Rational (a, b) that makes Lambda' vanish.
  mpq_class implied_a, implied_b;
  bool relations_hold = false;  // matches_table and lambda_prime_vanishes
  // Predicted sign of log|y| from the expansion of log|beta_2| - log|alpha_w|
  // (w = 0 when v = 0, else 2): -1, 0 (|.| < log 2) or +1; absent for (0,0).
  std::optional<int> predicted_sign;
  Enclosure predicted_log_y;
  Status approx_sign_agrees = Status::undecided;
  Enclosure approx_log_y;
};

/// Checks the j = 0, (k,l) = (1,2) case table against a decomposition.
inline CaseReport case_check(const SolutionRecord& rec, const BetaDecomposition& dec,
                             const PrecisionPolicy& policy = {}) {
  if (rec.j != 0) throw UnsupportedCase("case_check covers j = 0 only");
  if (!dec.exact_verified) throw PreconditionFailed("case_check needs an exactly verified decomposition");
  if (!(unit_word_to_element(dec.word, rec.n) == rec.beta0))
    throw PreconditionFailed("decomposition does not match the record's beta_0");
  const long s = rec.s, t = rec.t;
  CaseReport out;
  out.u = rec.u;
  out.v = rec.v;
  out.decomposition = dec.word;
  const long a = dec.word.a, b = dec.word.b;
  if (rec.u == 0 && rec.v == 0) {
    out.expected_a = 0;
    out.expected_b = 0;
  } else if (rec.u == 0 && rec.v == 2) {
    out.expected_a = s;
    out.expected_b = s - t;
  } else if (rec.u == 1 && rec.v == 0) {
    out.expected_a = t;
    out.expected_b = -s;
  } else if (rec.u == 1 && rec.v == 2) {
    out.expected_a = s - t;
    out.expected_b = -t;
  } else {
    throw UnsupportedCase("unexpected (u, v) for j = 0");
  }
  out.matches_table = a == out.expected_a && b == out.expected_b;

  // Lambda' = log|beta_2/beta_1| + log|alpha_u/alpha_v|; beta_2/beta_1 has exponents (a - 2b, 2a - b).
  const UnitWord au = alpha_word(s, t, rec.u), av = alpha_word(s, t, rec.v);
  const long qa = au.a - av.a, qb = au.b - av.b;
  out.lambda_prime_lam0 = a - 2 * b + qa;
  out.lambda_prime_lam2 = 2 * a - b + qb;
  out.lambda_prime_vanishes = out.lambda_prime_lam0 == 0 && out.lambda_prime_lam2 == 0;
  // a - 2b = -qa, 2a - b = -qb
  out.implied_a = mpq_class(2 * (-qb) - (-qa), 3);
  out.implied_b = mpq_class((-qb) - 2 * (-qa), 3);
  out.implied_a.canonicalize();
  out.implied_b.canonicalize();
  out.relations_hold = out.matches_table && out.lambda_prime_vanishes;

  // log|beta_2| - log|alpha_w| through unit words.
  const UnitWord b2 = conjugate(dec.word, 2);
  const int w = rec.v == 0 ? 0 : 2;
  const UnitWord aw = alpha_word(s, t, w);
  const LogYApprox approx = approx_log_y(rec, 2, policy);
  out.approx_log_y = approx.value;
  if (rec.u == 0 && rec.v == 0) return out;

  escalate_status(policy, [&](mpfr_prec_t bits) {
    const RootLogs lg = compute_root_logs(rec.n, bits);
    out.predicted_log_y = word_log({1, b2.a - aw.a, b2.b - aw.b}, lg);
    const Enclosure log2 = log2_constant(bits);
    if (rec.u == 1 && rec.v == 2) {
      out.predicted_sign = 0;
      const Status small = check_less(abs(out.predicted_log_y), log2);
      out.approx_sign_agrees = small && check_less(abs(approx.value), log2);
      return out.approx_sign_agrees;
    }
    out.predicted_sign = -1;
    const Status neg = check_less(out.predicted_log_y, Enclosure(0));
    out.approx_sign_agrees = neg && check_less(approx.value, Enclosure(0));
    return out.approx_sign_agrees;
  });
  return out;
}

struct LemmaParams {
  std::optional<long> n, s, t;
  std::optional<mpz_class> x, y;
  std::optional<mpq_class> a, b, c;  // prodbymax
  Epsilon epsilon{mpq_class(1, 10)};
  mpq_class c_cu = 64;
};

/// Name-based entry point: alphadiff, prodbymax, alphamax, alphasalad, coeff_ub_theta.
inline LemmaReport verify_lemma(const std::string& name, const LemmaParams& p, const PrecisionPolicy& policy = {}) {
  const auto require = [&](bool ok, const char* what) {
    if (!ok) throw PreconditionFailed(name + " needs " + what);
  };
  if (name == "prodbymax") {
    require(p.a && p.b && p.c, "a, b and c");
    return verify_prodbymax(*p.a, *p.b, *p.c);
  }
  if (name == "alphadiff" || name == "alphamax") {
    require(p.n && p.s && p.t, "n, s and t");
    return name == "alphadiff" ? verify_alphadiff(*p.n, *p.s, *p.t, p.epsilon, policy)
                               : verify_alphamax(*p.n, *p.s, *p.t, p.epsilon, policy);
  }
  if (name == "alphasalad" || name == "coeff_ub_theta") {
    require(p.n && p.s && p.t && p.x && p.y, "n, s, t, x and y");
    const SolutionRecord rec = classify_solution(*p.x, *p.y, *p.n, *p.s, *p.t, policy);
    if (name == "alphasalad") return verify_alphasalad(rec, policy);
    return verify_coeff_ub_theta(rec, decompose_beta(*p.x, *p.y, *p.n, *p.s, *p.t, policy), p.c_cu, policy);
  }
  throw std::invalid_argument("unknown lemma '" + name + "'");
}

/// Random positive rational triple with abc = 1.
inline std::array<mpq_class, 3> random_unit_triple(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(1, 1000000);
  mpq_class a(d(rng), d(rng)), b(d(rng), d(rng));
  a.canonicalize();
  b.canonicalize();
  mpq_class c = 1 / (a * b);
  return {a, b, c};
}

}  // namespace tthue
