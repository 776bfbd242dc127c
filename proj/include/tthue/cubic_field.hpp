#pragma once

#include <array>
#include <string>
#include <vector>

#include "tthue/enclosure.hpp"
#include "tthue/precision.hpp"

namespace tthue {

/// Parameter of the simplest cubic family f(X; n) = X^3 - (n-1)X^2 - (n+2)X - 1.
struct Params {
  long n = 3;

  explicit Params(long value) : n(value) {
    if (n < 3) throw DomainError("the family parameter n must be at least 3");
  }
};

inline void require_family_parameter(long n) { (void)Params(n); }

/// Validated enclosures of the three real roots, labelled by the bracket
/// they were isolated in: lam0 near n, lam1 near 0, lam2 near -1.
struct RootTriple {
  long n = 0;
  Enclosure lam0, lam1, lam2;
  mpfr_prec_t bits = 0;

  const Enclosure& operator[](int i) const { return i == 0 ? lam0 : (i == 1 ? lam1 : lam2); }
};

struct RootLogs {
  Enclosure log_lam0, log_abs_lam1, log_abs_lam2;

  const Enclosure& operator[](int i) const { return i == 0 ? log_lam0 : (i == 1 ? log_abs_lam1 : log_abs_lam2); }
};

/// p / (q * r) as an exact rational.
inline mpq_class frac(long p, long q, long r = 1) {
  mpq_class v(mpz_class(p), mpz_class(q) * mpz_class(r));
  v.canonicalize();
  return v;
}

namespace detail {

inline int sign_of_f(long n, const Dyadic& x) {
  // Horner, exact in dyadic arithmetic.
  Dyadic v = x - Dyadic(n - 1);
  v = v * x - Dyadic(n + 2);
  v = v * x - Dyadic(1);
  return v.sign();
}

inline void eval_f_mpfr(long n, mpfr_ptr out, mpfr_ptr deriv, mpfr_srcptr x, mpfr_prec_t prec) {
  Mpfr tmp(prec);
  // f = ((x - (n-1)) x - (n+2)) x - 1 ; f' = (3x - 2(n-1)) x - (n+2)
  mpfr_sub_si(tmp.get(), x, n - 1, MPFR_RNDN);
  mpfr_mul(tmp.get(), tmp.get(), x, MPFR_RNDN);
  mpfr_sub_si(tmp.get(), tmp.get(), n + 2, MPFR_RNDN);
  mpfr_mul(tmp.get(), tmp.get(), x, MPFR_RNDN);
  mpfr_sub_si(out, tmp.get(), 1, MPFR_RNDN);
  mpfr_mul_si(tmp.get(), x, 3, MPFR_RNDN);
  mpfr_sub_si(tmp.get(), tmp.get(), 2 * (n - 1), MPFR_RNDN);
  mpfr_mul(tmp.get(), tmp.get(), x, MPFR_RNDN);
  mpfr_sub_si(deriv, tmp.get(), n + 2, MPFR_RNDN);
}

/// Isolates the single root of f in the rational bracket (lo_q, hi_q) to
/// relative width about 2^-bits. Endpoint signs are checked exactly.
inline Enclosure isolate_root(long n, const mpq_class& lo_q, const mpq_class& hi_q, mpfr_prec_t bits) {
  const mpfr_prec_t prec = bits + 64;
  Dyadic a = Dyadic::from_rational(lo_q, prec, MPFR_RNDD);
  Dyadic b = Dyadic::from_rational(hi_q, prec, MPFR_RNDU);
  const int sa = sign_of_f(n, a);
  const int sb = sign_of_f(n, b);
  if (sa == 0) return Enclosure(a);
  if (sb == 0) return Enclosure(b);
  if (sa == sb) throw VerificationFailed("root bracket without sign change for n = " + std::to_string(n));

  const std::int64_t scale = std::max(a.msb(), b.msb());
  const Dyadic target = Dyadic(1).ldexp(scale - bits);

  // Newton from the midpoint, then certify a tiny bracket around the iterate.
  {
    Mpfr x(prec), fx(prec), dfx(prec), step(prec);
    (a + b).ldexp(-1).to_mpfr(x.get(), MPFR_RNDN);
    for (int it = 0; it < 400; ++it) {
      eval_f_mpfr(n, fx.get(), dfx.get(), x.get(), prec);
      if (mpfr_zero_p(dfx.get())) break;
      mpfr_div(step.get(), fx.get(), dfx.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
      if (mpfr_zero_p(step.get()) || mpfr_get_exp(step.get()) < mpfr_get_exp(x.get()) - prec + 4) break;
    }
    const Dyadic guess = x.dyadic();
    if (a < guess && guess < b) {
      Dyadic delta = target.ldexp(-2);
      while (delta < b - a) {
        const Dyadic lo = std::max(a, guess - delta);
        const Dyadic hi = std::min(b, guess + delta);
        const int slo = sign_of_f(n, lo);
        const int shi = sign_of_f(n, hi);
        if (slo == 0) return Enclosure(lo);
        if (shi == 0) return Enclosure(hi);
        if (slo == sa && shi == sb) {
          a = lo;
          b = hi;
          break;
        }
        delta = delta.ldexp(4);
      }
    }
  }
  // Bisection finishes whatever Newton did not certify.
  while (b - a > target) {
    const Dyadic m = (a + b).ldexp(-1);
    const int sm = sign_of_f(n, m);
    if (sm == 0) return Enclosure(m);
    if (sm == sa) {
      a = m;
    } else {
      b = m;
    }
  }
  return Enclosure(a, b);
}

}  // namespace detail

/// Root enclosures of f(X; n) at roughly `bits` relative precision.
inline RootTriple compute_roots(long n, mpfr_prec_t bits) {
  require_family_parameter(n);
  const mpq_class nq(n);
  RootTriple r;
  r.n = n;
  r.bits = bits;
  r.lam0 = detail::isolate_root(n, nq + frac(1, n), nq + frac(2, n), bits);
  r.lam1 = detail::isolate_root(n, -frac(1, n + 1), -frac(1, n + 2), bits);
  r.lam2 = detail::isolate_root(n, -1 - frac(1, n), -1 - frac(1, n + 1), bits);
  return r;
}

/// Root enclosures refined until each is at most policy.target_width wide.
inline RootTriple compute_roots(long n, const PrecisionPolicy& policy) {
  require_family_parameter(n);
  RootTriple out;
  policy.for_each_level([&](mpfr_prec_t bits) {
    out = compute_roots(n, bits);
    return !(out.lam0.width() <= policy.target_width && out.lam1.width() <= policy.target_width &&
             out.lam2.width() <= policy.target_width);
  });
  return out;
}

inline RootLogs compute_root_logs(const RootTriple& roots, mpfr_prec_t bits) {
  return {log(roots.lam0, bits), log(-roots.lam1, bits), log(-roots.lam2, bits)};
}

inline RootLogs compute_root_logs(long n, mpfr_prec_t bits) { return compute_root_logs(compute_roots(n, bits), bits); }

inline RootLogs compute_root_logs(long n, const PrecisionPolicy& policy) {
  const RootTriple roots = compute_roots(n, policy);
  return compute_root_logs(roots, roots.bits);
}

/// One certified inequality of a bracket check.
struct InequalityCheck {
  std::string label;
  Status status = Status::undecided;
};

struct BracketReport {
  Status status = Status::undecided;  // conjunction of `checks`
  std::vector<InequalityCheck> checks;
  mpfr_prec_t bits = 0;
  // Informational checks that are not part of `status`.
  std::vector<InequalityCheck> extra;
};

namespace detail {

inline Status all_of(const std::vector<InequalityCheck>& checks) {
  Status s = Status::pass;
  for (const auto& c : checks) s = s && c.status;
  return s;
}

inline Enclosure q(const mpq_class& v, mpfr_prec_t bits) { return Enclosure::rational(v, bits); }

}  // namespace detail

/// Certifies the six root bracket inequalities at a single precision.
inline BracketReport root_brackets_at(long n, mpfr_prec_t bits) {
  const RootTriple r = compute_roots(n, bits);
  const mpq_class nq(n);
  const mpfr_prec_t p = bits + 64;
  using detail::q;
  BracketReport rep;
  rep.bits = bits;
  rep.checks = {
      {"n + 1/n < lam0", check_less(q(nq + frac(1, n), p), r.lam0)},
      {"lam0 < n + 2/n", check_less(r.lam0, q(nq + frac(2, n), p))},
      {"-1/(n+1) < lam1", check_less(q(-frac(1, n + 1), p), r.lam1)},
      {"lam1 < -1/(n+2)", check_less(r.lam1, q(-frac(1, n + 2), p))},
      {"-1-1/n < lam2", check_less(q(-1 - frac(1, n), p), r.lam2)},
      {"lam2 < -1-1/(n+1)", check_less(r.lam2, q(-1 - frac(1, n + 1), p))},
  };
  rep.status = detail::all_of(rep.checks);
  return rep;
}

inline BracketReport verify_root_brackets(long n, const PrecisionPolicy& policy = {}) {
  require_family_parameter(n);
  BracketReport rep;
  escalate_status(policy, [&](mpfr_prec_t bits) {
    rep = root_brackets_at(n, bits);
    return rep.status;
  });
  return rep;
}

/// Certifies the logarithmic root brackets. The upper bound for log lam0 is
/// checked as stated (log n + 1/n^2) and, in `extra`, with 2/n^2.
inline BracketReport root_log_brackets_at(long n, mpfr_prec_t bits) {
  const RootLogs lg = compute_root_logs(n, bits);
  const mpq_class nq(n);
  const mpfr_prec_t p = bits + 64;
  using detail::q;
  const Enclosure log_n = log(Enclosure(n), p);
  BracketReport rep;
  rep.bits = bits;
  rep.checks = {
      {"log n < log lam0", check_less(log_n, lg.log_lam0)},
      {"log lam0 < log n + 1/n^2", check_less(lg.log_lam0, log_n + q(frac(1, n, n), p))},
      {"-log n - 2/n < log|lam1|", check_less(-log_n - q(frac(2, n), p), lg.log_abs_lam1)},
      {"log|lam1| < -log n - 1/(2n)", check_less(lg.log_abs_lam1, -log_n - q(frac(1, 2 * n), p))},
      {"1/n - 2/n^2 < log|lam2|", check_less(q(frac(1, n) - frac(2, n, n), p), lg.log_abs_lam2)},
      {"log|lam2| < 1/n + 1/n^2", check_less(lg.log_abs_lam2, q(frac(1, n) + frac(1, n, n), p))},
  };
  rep.extra = {
      {"log lam0 < log n + 2/n^2", check_less(lg.log_lam0, log_n + q(frac(2, n, n), p))},
  };
  rep.status = detail::all_of(rep.checks);
  return rep;
}

/// Escalates until every inequality (including the informational ones) is
/// decided, so a certified failure is reported as `fail`, not `undecided`.
inline BracketReport verify_root_log_brackets(long n, const PrecisionPolicy& policy = {}) {
  require_family_parameter(n);
  BracketReport rep;
  escalate_status(policy, [&](mpfr_prec_t bits) {
    rep = root_log_brackets_at(n, bits);
    Status decided = Status::pass;
    for (const auto* list : {&rep.checks, &rep.extra})
      for (const auto& c : *list)
        if (c.status == Status::undecided) decided = Status::undecided;
    return decided;
  });
  return rep;
}

}  // namespace tthue
