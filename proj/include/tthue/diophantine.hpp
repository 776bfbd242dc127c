#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>

#include "tthue/cubic_field.hpp"
#include "tthue/order_algebra.hpp"
#include "tthue/precision.hpp"
#include "tthue/twisted_form.hpp"

namespace tthue {

/// Positive rational epsilon, written "p/q" or "p".
struct Epsilon {
  mpq_class value;

  explicit Epsilon(mpq_class v) : value(std::move(v)) {
    value.canonicalize();
    if (sgn(value) <= 0) throw DomainError("epsilon must be positive");
  }

  static Epsilon parse(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789/-+") != std::string::npos)
      throw std::invalid_argument("epsilon must be a rational p/q, got '" + text + "'");
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("bad rational '" + text + "'");
    return Epsilon(q);
  }

  std::string to_string() const { return value.get_str(); }
};

inline long min_separation(long s, long t) {
  return std::min({std::labs(2 * s - t), std::labs(2 * t - s), std::labs(s + t)});
}

/// st != 0 and min(|2s-t|, |2t-s|, |s+t|) > eps * tau.
inline bool separation_holds(long s, long t, const Epsilon& eps) {
  if (s == 0 || t == 0) return false;
  const long tau = std::max(std::labs(s), std::labs(t));
  return mpq_class(min_separation(s, t)) > eps.value * tau;
}

/// separation_holds and additionally eps * tau > 2.
inline bool check_condition(long s, long t, const Epsilon& eps) {
  const long tau = std::max(std::labs(s), std::labs(t));
  return separation_holds(s, t, eps) && eps.value * tau > 2;
}

struct C1Result {
  Status feasible = Status::undecided;
  Enclosure value;  // eps - 3(1/n + 1/n^2)/log n
  mpq_class lower;  // rational lower end of `value`
  mpfr_prec_t bits = 0;
};

/// c1 = eps - 3(1/n + 1/n^2)/log n, feasible iff c1 tau log n >= log 2.
inline C1Result compute_c1(const Epsilon& eps, long n, long tau, const PrecisionPolicy& policy = {}) {
  require_family_parameter(n);
  if (tau < 1) throw DomainError("compute_c1 needs tau >= 1");
  C1Result out;
  escalate_status(policy, [&](mpfr_prec_t bits) {
    const mpfr_prec_t p = bits + 32;
    const Enclosure log_n = log(Enclosure(n), p);
    const Enclosure corr = Enclosure::rational(3 * (frac(1, n) + frac(1, n, n)), p);
    out.value = Enclosure::rational(eps.value, p) - div(corr, log_n, p);
    const Enclosure gap = (Enclosure::rational(eps.value, p) * log_n - corr) * Enclosure(tau);
    out.feasible = check_less_equal(log2_constant(p), gap);
    out.bits = bits;
    return out.feasible;
  });
  out.lower = out.value.lo().to_rational();
  return out;
}

/// A solution (or synthetic unit) with its classification. Indices follow
/// beta_j = min |beta_i|, k < l the others, u = argmax(|alpha_j|, |alpha_k|),
/// v = argmax(|alpha_j|, |alpha_l|).
struct SolutionRecord {
  long n = 3, s = 0, t = 0;
  std::optional<mpz_class> x, y;  // absent for synthetic records
  OrderElement beta0;
  int j = 0, k = 1, l = 2, u = 0, v = 0;
  std::array<Enclosure, 3> beta, alpha;
  std::array<int, 3> alpha_order{0, 1, 2};  // by |alpha_i| descending
  // pass when every comparison above was certified; undecided on an exact
  // tie (then the smallest index wins) or on precision exhaustion.
  Status ordering = Status::undecided;
  bool exact_tie = false;
  mpfr_prec_t bits = 0;

  long tau() const { return std::max(std::labs(s), std::labs(t)); }
};

/// Real-value enclosures of everything a record depends on, at one precision.
struct RecordValues {
  RootTriple roots;
  RootLogs logs;
  std::array<Enclosure, 3> beta, alpha;
};

inline RecordValues record_values(long n, long s, long t, const OrderElement& beta0, mpfr_prec_t bits) {
  RecordValues v;
  v.roots = compute_roots(n, bits);
  v.logs = compute_root_logs(v.roots, bits);
  v.alpha = alpha_enclosures(v.roots, s, t, bits);
  for (int i = 0; i < 3; ++i) v.beta[static_cast<std::size_t>(i)] = evaluate(beta0, v.roots[i], bits);
  return v;
}

inline RecordValues record_values(const SolutionRecord& r, mpfr_prec_t bits) {
  return record_values(r.n, r.s, r.t, r.beta0, bits);
}

namespace detail {

struct Comparison {
  bool first = true;  // whether p precedes q
  bool exact_tie = false;
  bool undecided = false;
};

// Orders p before q when |e_p| > |e_q| (descending) or < (ascending). Exact
// ties order by index; uncertified pairs fall back to midpoints.
inline Comparison compare_abs(int p, int q, const std::array<Enclosure, 3>& e, const std::array<OrderElement, 3>& exact,
                              bool descending) {
  const auto P = static_cast<std::size_t>(p), Q = static_cast<std::size_t>(q);
  Comparison c;
  if (exact[P] == exact[Q] || exact[P] == -exact[Q]) {
    c.exact_tie = true;
    c.first = p < q;
    return c;
  }
  const Enclosure ap = abs(e[P]), aq = abs(e[Q]);
  const Status greater = check_less(aq, ap);
  if (greater == Status::undecided) {
    c.undecided = true;
    c.first = descending ? (aq.midpoint() < ap.midpoint()) : (ap.midpoint() < aq.midpoint());
    return c;
  }
  c.first = descending ? greater == Status::pass : greater == Status::fail;
  return c;
}

struct Ranking {
  std::array<int, 3> order{0, 1, 2};
  bool exact_tie = false;
  bool undecided = false;
};

inline Ranking rank(const std::array<Enclosure, 3>& e, const std::array<OrderElement, 3>& exact, bool descending) {
  Ranking r;
  std::array<std::array<Comparison, 3>, 3> cmp{};
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      if (p != q) {
        cmp[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = compare_abs(p, q, e, exact, descending);
        const auto& c = cmp[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        r.exact_tie = r.exact_tie || c.exact_tie;
        r.undecided = r.undecided || c.undecided;
      }
  // Three elements: count how many each one precedes.
  std::array<int, 3> wins{0, 0, 0};
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      if (p != q && cmp[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)].first) ++wins[static_cast<std::size_t>(p)];
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](int a, int b) { return wins[static_cast<std::size_t>(a)] > wins[static_cast<std::size_t>(b)]; });
  return r;
}

inline std::array<OrderElement, 3> conjugates(const OrderElement& e) {
  const OrderElement e1 = conjugate(e);
  return {e, e1, conjugate(e1)};
}

// One classification attempt; `j_override` fixes j for synthetic records.
inline SolutionRecord classify_at(long n, long s, long t, const OrderElement& beta0, std::optional<int> j_override,
                                  mpfr_prec_t bits, bool& undecided) {
  const RecordValues val = record_values(n, s, t, beta0, bits);
  const auto betas = conjugates(beta0);
  const auto alphas = alpha_elements(n, s, t);
  SolutionRecord rec;
  rec.n = n;
  rec.s = s;
  rec.t = t;
  rec.beta0 = beta0;
  rec.beta = val.beta;
  rec.alpha = val.alpha;
  rec.bits = bits;
  bool tie = false;
  undecided = false;

  if (j_override) {
    if (*j_override < 0 || *j_override > 2) throw std::invalid_argument("j must be 0, 1 or 2");
    rec.j = *j_override;
  } else {
    const Ranking rb = rank(val.beta, betas, false);
    // Only comparisons against the minimum matter for j.
    rec.j = rb.order[0];
    for (int q = 0; q < 3; ++q) {
      if (q == rec.j) continue;
      const Comparison c = compare_abs(rec.j, q, val.beta, betas, false);
      tie = tie || c.exact_tie;
      undecided = undecided || c.undecided;
    }
  }
  rec.k = rec.j == 0 ? 1 : 0;
  rec.l = rec.j == 2 ? 1 : 2;

  const Ranking ra = rank(val.alpha, alphas, true);
  rec.alpha_order = ra.order;
  tie = tie || ra.exact_tie;
  undecided = undecided || ra.undecided;
  const auto pick = [&](int p, int q) {
    const Comparison c = compare_abs(p, q, val.alpha, alphas, true);
    return c.first ? p : q;
  };
  rec.u = pick(rec.j, rec.k);
  rec.v = pick(rec.j, rec.l);

  rec.exact_tie = tie;
  rec.ordering = (tie || undecided) ? Status::undecided : Status::pass;
  return rec;
}

}  // namespace detail

/// Classifies the unit beta0 = x - alpha_0 y (or any unit, for synthetic
/// records), escalating precision until every ordering is certified.
inline SolutionRecord classify_units(long n, long s, long t, const OrderElement& beta0, const PrecisionPolicy& policy = {},
                                     std::optional<int> j_override = std::nullopt) {
  require_family_parameter(n);
  if (beta0.n() != n) throw MismatchedField("beta0 belongs to another family member");
  SolutionRecord rec;
  policy.for_each_level([&](mpfr_prec_t bits) {
    bool undecided = false;
    rec = detail::classify_at(n, s, t, beta0, j_override, bits, undecided);
    return undecided;
  });
  return rec;
}

/// Classifies an integer solution of |F(x,y; n,s,t)| = 1.
inline SolutionRecord classify_solution(const mpz_class& x, const mpz_class& y, long n, long s, long t,
                                        const PrecisionPolicy& policy = {}) {
  require_family_parameter(n);
  const mpz_class value = evaluate_form(n, s, t, x, y);
  if (abs(value) != 1)
    throw PreconditionFailed("(" + x.get_str() + ", " + y.get_str() + ") is not a solution: F = " + value.get_str());
  const OrderElement beta0 = OrderElement::integer(n, x) - y * alpha_element(n, s, t, 0);
  SolutionRecord rec = classify_units(n, s, t, beta0, policy);
  rec.x = x;
  rec.y = y;
  return rec;
}

/// Record built from a prescribed unit beta0 with a prescribed j.
inline SolutionRecord synthetic_record(long n, long s, long t, const UnitWord& beta0, int j,
                                       const PrecisionPolicy& policy = {}) {
  return classify_units(n, s, t, unit_word_to_element(beta0, n), policy, j);
}

struct BetaDecomposition {
  UnitWord word;
  bool exact_verified = false;
  Status status = Status::undecided;  // undecided: (a, b) not isolated at max_bits
  mpfr_prec_t bits = 0;
};

namespace detail {

// The integer m with x inside (m - 1/2, m + 1/2), if the enclosure shows one.
inline std::optional<long> nearest_integer(const Enclosure& x) {
  const mpz_class m = (x.midpoint() + Dyadic(1).ldexp(-1)).floor();
  const Dyadic half = Dyadic(1).ldexp(-1);
  if (!(Dyadic(m) - half < x.lo() && x.hi() < Dyadic(m) + half)) return std::nullopt;
  if (!m.fits_slong_p()) throw UnsupportedCase("unit exponent exceeds the machine word");
  return m.get_si();
}

}  // namespace detail

/// Writes the unit u as sign * lam0^a * lam2^b. The exponents come from the
/// conjugate log equations log|u(lam0)| = a log lam0 + b log|lam2| and
/// log|u(lam1)| = a log|lam1| + b log lam0, then are checked exactly.
inline BetaDecomposition decompose_unit(const OrderElement& u, const PrecisionPolicy& policy = {}) {
  const mpz_class nrm = norm(u);
  if (abs(nrm) != 1) throw NotAUnit("element " + u.to_string() + " has norm " + nrm.get_str());
  const long n = u.n();
  const auto found = escalate(policy, [&](mpfr_prec_t bits) -> std::optional<UnitWord> {
    const RootTriple r = compute_roots(n, bits);
    const RootLogs lg = compute_root_logs(r, bits);
    const Enclosure v0 = evaluate(u, r.lam0, bits);
    const Enclosure v1 = evaluate(u, r.lam1, bits);
    if (v0.contains_zero() || v1.contains_zero()) return std::nullopt;
    const Enclosure L0 = log(abs(v0), bits), L1 = log(abs(v1), bits);
    const Enclosure det = lg.log_lam0 * lg.log_lam0 - lg.log_abs_lam2 * lg.log_abs_lam1;
    const Enclosure a = div(L0 * lg.log_lam0 - L1 * lg.log_abs_lam2, det, bits);
    const Enclosure b = div(L1 * lg.log_lam0 - L0 * lg.log_abs_lam1, det, bits);
    const auto ia = detail::nearest_integer(a);
    const auto ib = detail::nearest_integer(b);
    if (!ia || !ib) return std::nullopt;
    // lam2 < 0, so the value's sign is sign * (-1)^b.
    const int value_sign = v0.positive() ? 1 : -1;
    return UnitWord{(*ib % 2 == 0) ? value_sign : -value_sign, *ia, *ib};
  });
  BetaDecomposition out;
  out.bits = found.bits;
  if (!found.value) return out;
  out.word = *found.value;
  if (!(unit_word_to_element(out.word, n) == u))
    throw VerificationFailed("unit " + u.to_string() + " does not expand from the recovered word");
  out.exact_verified = true;
  out.status = Status::pass;
  return out;
}

inline BetaDecomposition decompose_beta(const mpz_class& x, const mpz_class& y, long n, long s, long t,
                                        const PrecisionPolicy& policy = {}) {
  require_family_parameter(n);
  const mpz_class value = evaluate_form(n, s, t, x, y);
  if (abs(value) != 1)
    throw PreconditionFailed("(" + x.get_str() + ", " + y.get_str() + ") is not a solution: F = " + value.get_str());
  return decompose_unit(OrderElement::integer(n, x) - y * alpha_element(n, s, t, 0), policy);
}

/// a log lam0 + b log|lam2| for the word sign * lam0^a * lam2^b.
inline Enclosure word_log(const UnitWord& w, const RootLogs& lg) {
  return Enclosure(w.a) * lg.log_lam0 + Enclosure(w.b) * lg.log_abs_lam2;
}

struct AlphaQuotient {
  long coeff_lam0 = 0;
  long coeff_lam2 = 0;
  Enclosure value;  // log|alpha_p / alpha_q|
};

/// log|alpha_p / alpha_q| = A log lam0 + B log|lam2| for the ordered pair (p, q).
inline AlphaQuotient log_alpha_quotient(int p, int q, long n, long s, long t, mpfr_prec_t bits = 128) {
  if (p == q) throw std::invalid_argument("log_alpha_quotient needs two distinct indices");
  const UnitWord wp = alpha_word(s, t, p), wq = alpha_word(s, t, q);
  AlphaQuotient out;
  out.coeff_lam0 = wp.a - wq.a;
  out.coeff_lam2 = wp.b - wq.b;
  const RootLogs lg = compute_root_logs(n, bits);
  out.value = word_log({1, out.coeff_lam0, out.coeff_lam2}, lg);
  return out;
}

enum class LinearFormKind { lambda, lambda_prime, lambda_dblprime };

inline std::string to_string(LinearFormKind k) {
  switch (k) {
    case LinearFormKind::lambda:
      return "lambda";
    case LinearFormKind::lambda_prime:
      return "lambda_prime";
    case LinearFormKind::lambda_dblprime:
      return "lambda_dblprime";
  }
  return "lambda";
}

/// A log lam0 + B log|lam2| - C log 2. For `lambda` the value also carries
/// log|(alpha_j - alpha_k)/(alpha_j - alpha_l)|, which has no such expansion.
struct LinearFormReport {
  LinearFormKind kind = LinearFormKind::lambda;
  std::string branch;
  long coeff_lam0 = 0;
  long coeff_lam2 = 0;
  int coeff_log2 = 0;
  Enclosure value;
  Enclosure upper_bound;
  Status nonzero = Status::undecided;
  Status bound_holds = Status::undecided;
  mpfr_prec_t bits = 0;

  bool nonzero_certified() const { return nonzero == Status::pass; }
};

namespace detail {

inline std::size_t at(int i) { return static_cast<std::size_t>(i); }

inline Enclosure log_abs(const Enclosure& e, mpfr_prec_t bits) { return log(abs(e), bits); }

// n^(-c1 tau / 2)
inline Enclosure lambda_prime_scale(const SolutionRecord& rec, const Epsilon& eps, mpfr_prec_t bits) {
  const C1Result c1 = compute_c1(eps, rec.n, std::max(1L, rec.tau()));
  const Enclosure e = -(c1.value * Enclosure(rec.tau()) * log(Enclosure(rec.n), bits)).ldexp(-1);
  return exp(e.rounded(bits), bits);
}

}  // namespace detail

/// Lambda, Lambda' or Lambda'' for a classified record whose beta_0 is the
/// unit word `beta0`.
inline LinearFormReport linear_form(const SolutionRecord& rec, const UnitWord& beta0, LinearFormKind kind,
                                    const PrecisionPolicy& policy = {}, const Epsilon& eps = Epsilon(mpq_class(1, 10))) {
  using detail::at;
  if (!(unit_word_to_element(beta0, rec.n) == rec.beta0))
    throw PreconditionFailed("unit word does not match the record's beta_0");
  const int j = rec.j, k = rec.k, l = rec.l;
  std::array<UnitWord, 3> bw, aw;
  for (int i = 0; i < 3; ++i) {
    bw[at(i)] = conjugate(beta0, i);
    aw[at(i)] = alpha_word(rec.s, rec.t, i);
  }

  LinearFormReport rep;
  rep.kind = kind;
  // log|beta_l / beta_k| always contributes.
  long A = bw[at(l)].a - bw[at(k)].a;
  long B = bw[at(l)].b - bw[at(k)].b;
  int C = 0;
  std::string branch = to_string(kind);

  if (kind != LinearFormKind::lambda) {
    A += aw[at(rec.u)].a - aw[at(rec.v)].a;
    B += aw[at(rec.u)].b - aw[at(rec.v)].b;
  }
  if (kind == LinearFormKind::lambda_dblprime && A == 0 && B == 0) {
    if (rec.u == j && rec.v == j) {
      // |alpha_j| maximal: log|alpha_k| - log|alpha_j| - log 2
      branch = "alpha_j_max";
      A = aw[at(k)].a - aw[at(j)].a;
      B = aw[at(k)].b - aw[at(j)].b;
      C = 1;
    } else {
      // K carries the larger |alpha| of k, l.
      const int K = std::find(rec.alpha_order.begin(), rec.alpha_order.end(), k) <
                            std::find(rec.alpha_order.begin(), rec.alpha_order.end(), l)
                        ? k
                        : l;
      const int L = K == k ? l : k;
      const auto betas = detail::conjugates(rec.beta0);
      const auto alphas = alpha_elements(rec.n, rec.s, rec.t);
      const OrderElement lhs = betas[at(l)] * alphas[at(rec.u)];
      const OrderElement rhs = betas[at(k)] * alphas[at(rec.v)];
      if (lhs == rhs) {
        branch = "no_sign_flip";
        A = bw[at(L)].a - bw[at(K)].a;
        B = bw[at(L)].b - bw[at(K)].b;
      } else if (lhs == -rhs) {
        branch = "sign_flip";
        A = bw[at(K)].a - bw[at(L)].a + aw[at(j)].a - aw[at(K)].a;
        B = bw[at(K)].b - bw[at(L)].b + aw[at(j)].b - aw[at(K)].b;
        C = 1;
      } else {
        throw VerificationFailed("Lambda' vanishes but |beta_l alpha_u| != |beta_k alpha_v|");
      }
    }
  }
  rep.branch = branch;
  rep.coeff_lam0 = A;
  rep.coeff_lam2 = B;
  rep.coeff_log2 = C;

  escalate_status(policy, [&](mpfr_prec_t bits) {
    rep.bits = bits;
    const RecordValues val = record_values(rec, bits);
    const mpfr_prec_t p = bits;
    if (kind == LinearFormKind::lambda) {
      const Enclosure dk = val.alpha[at(j)] - val.alpha[at(k)];
      const Enclosure dl = val.alpha[at(j)] - val.alpha[at(l)];
      if (val.beta[at(k)].contains_zero() || val.beta[at(l)].contains_zero() || dk.contains_zero() ||
          dl.contains_zero()) {
        rep.nonzero = Status::undecided;
        return rep.nonzero;
      }
      rep.value = word_log({1, A, B}, val.logs) + detail::log_abs(dk, p) - detail::log_abs(dl, p);
      const Enclosure ratio = div(val.beta[at(j)], val.beta[at(k)], p) *
                              div(val.alpha[at(k)] - val.alpha[at(l)], dl, p);
      rep.upper_bound = abs(ratio).ldexp(1).rounded(p);
    } else {
      rep.value = word_log({1, A, B}, val.logs) - Enclosure(C) * log2_constant(p);
      rep.upper_bound = detail::lambda_prime_scale(rec, eps, p);
    }
    rep.value = rep.value.rounded(p);
    if (rep.value.excludes_zero()) {
      rep.nonzero = Status::pass;
    } else if (kind != LinearFormKind::lambda && A == 0 && B == 0 && C == 0) {
      rep.nonzero = Status::fail;  // exactly zero
    } else {
      rep.nonzero = Status::undecided;
    }
    rep.bound_holds = check_less_equal(abs(rep.value), rep.upper_bound);
    if (rep.nonzero == Status::undecided) return Status::undecided;
    return rep.bound_holds;
  });
  return rep;
}

struct LogYApprox {
  int index = 1;     // k or l
  Enclosure value;   // log|beta_index| - log|alpha_j - alpha_index|
  // Present when y is known: r = beta_j / (y (alpha_j - alpha_index)) and
  // the bound -log(1 - |r|) on |value - log|y||.
  std::optional<Enclosure> r;
  std::optional<Enclosure> delta_bound;
  Status within_delta = Status::undecided;
  mpfr_prec_t bits = 0;
};

/// Approximation of log|y| through beta_k (or beta_l).
inline LogYApprox approx_log_y(const SolutionRecord& rec, std::optional<int> which = std::nullopt,
                               const PrecisionPolicy& policy = {}) {
  using detail::at;
  const int w = which.value_or(rec.k);
  if (w != rec.k && w != rec.l) throw std::invalid_argument("approx_log_y index must be k or l");
  if (rec.y && *rec.y == 0) throw PreconditionFailed("approx_log_y needs |y| >= 1");
  LogYApprox out;
  out.index = w;
  policy.for_each_level([&](mpfr_prec_t bits) {
    out.bits = bits;
    const RecordValues val = record_values(rec, bits);
    const Enclosure d = val.alpha[at(rec.j)] - val.alpha[at(w)];
    if (val.beta[at(w)].contains_zero() || d.contains_zero()) return true;
    out.value = (detail::log_abs(val.beta[at(w)], bits) - detail::log_abs(d, bits)).rounded(bits);
    const bool tight = out.value.width() <= policy.target_width;
    if (!rec.y) {
      out.within_delta = Status::undecided;
      return !tight;
    }
    const Enclosure yy = Enclosure::integer(*rec.y);
    const Enclosure r = div(val.beta[at(rec.j)], yy * d, bits);
    out.r = r;
    const Enclosure ar = abs(r);
    if (!(ar.hi() < Dyadic(1))) {
      out.delta_bound.reset();
      out.within_delta = Status::undecided;
      return true;
    }
    const Enclosure delta = -log(Enclosure(1) - ar, bits);
    out.delta_bound = delta;
    const Enclosure log_y = log(abs(yy), bits);
    // log|y| must meet value +- (upper end of the delta bound).
    const Enclosure widened(out.value.lo() - delta.hi(), out.value.hi() + delta.hi());
    out.within_delta = widened.overlaps(log_y) ? Status::pass : Status::fail;
    return !tight;
  });
  return out;
}

}  // namespace tthue
